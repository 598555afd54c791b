#include "pbn/discretize.hpp"
#include "pbn/errors.hpp"
#include "pbn/expression_matrix.hpp"
#include "pbn/format.hpp"
#include "pbn/infer.hpp"
#include "pbn/oracle.hpp"
#include "pbn/parallel.hpp"
#include "pbn/pbn.hpp"
#include "pbn/pipeline.hpp"
#include "pbn/rng.hpp"
#include "pbn/ssd.hpp"

#include "CLI11.hpp"

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

namespace {

using pbn::DataError;

template <typename T>
T parse_integer(const std::string& text, const std::string& key) {
    T value{};
    auto r = std::from_chars(text.data(), text.data() + text.size(), value);
    if (r.ec != std::errc() || r.ptr != text.data() + text.size()) {
        throw DataError("config value " + key + "=" + text +
                        " is not a valid integer");
    }
    return value;
}

double parse_real(const std::string& text, const std::string& key) {
    double value{};
    auto r = std::from_chars(text.data(), text.data() + text.size(), value);
    if (r.ec != std::errc() || r.ptr != text.data() + text.size()) {
        throw DataError("config value " + key + "=" + text +
                        " is not a valid number");
    }
    return value;
}

// Config files hold the same keys as the long flags and take precedence
// over anything given on the command line.
using Setters = std::map<std::string, std::function<void(const std::string&)>>;

void apply_config(const std::string& path, const Setters& setters) {
    if (path.empty()) return;
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot read config '" + path + "'");
    }
    for (const auto& [key, value] : pbn::parse_key_values(in)) {
        auto it = setters.find(key);
        if (it == setters.end()) {
            throw DataError("unknown config key '" + key + "' in '" + path + "'");
        }
        it->second(value);
    }
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot read '" + path + "'");
    }
    return in;
}

void with_output(const std::string& path,
                 const std::function<void(std::ostream&)>& write) {
    if (path == "-" || path.empty()) {
        write(std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write '" + path + "'");
    }
    write(out);
}

struct DiscretizeArgs {
    std::string input, genes, method = "median", out = "-", config;
    unsigned threads = 1;
};

struct InferArgs {
    std::string input, genes, method, out = "-", config;
    std::size_t k = 3, n_predictors = 10;
    double perturbation = 0.001;
    unsigned threads = 1;
    bool method_given = false;
};

struct SimulateArgs {
    std::string input, init, out = "-", config;
    std::uint64_t burn_in = 10000, samples = 40000, seed = 1;
};

struct AnalyzeArgs {
    std::string input, out = ".", config;
    std::size_t subsample = 10;
    double alpha = 0.05;
};

struct OracleArgs {
    std::string input, out = "-", config;
    bool gray = false;
    unsigned threads = 1;
    std::size_t max_genes = 14;
};

void run_discretize(const DiscretizeArgs& a) {
    auto in = open_input(a.input);
    pbn::ExpressionMatrix m = pbn::parse_expression_matrix(in);
    auto genes = pbn::parse_gene_list(a.genes);
    if (!genes.empty()) m = pbn::select_genes(m, genes);
    pbn::BinaryMatrix b =
        pbn::discretize(m, pbn::threshold_method_from_string(a.method),
                        pbn::DiscretizeAxis::PerGene,
                        pbn::resolve_threads(a.threads));
    with_output(a.out, [&](std::ostream& out) {
        pbn::serialize_binary_matrix(b, out);
    });
}

void run_infer(const InferArgs& a) {
    auto in = open_input(a.input);
    pbn::BinaryMatrix b = [&]() {
        if (a.method_given) {
            pbn::ExpressionMatrix m = pbn::parse_expression_matrix(in);
            auto genes = pbn::parse_gene_list(a.genes);
            if (!genes.empty()) m = pbn::select_genes(m, genes);
            return pbn::discretize(m, pbn::threshold_method_from_string(a.method),
                                   pbn::DiscretizeAxis::PerGene,
                                   pbn::resolve_threads(a.threads));
        }
        pbn::BinaryMatrix raw = pbn::parse_binary_matrix(in);
        auto genes = pbn::parse_gene_list(a.genes);
        if (genes.empty()) return raw;
        // Reuse the expression-side selector through a round trip.
        std::istringstream again(pbn::serialize_binary_matrix(raw));
        pbn::ExpressionMatrix m = pbn::parse_expression_matrix(again);
        m = pbn::select_genes(m, genes);
        std::istringstream selected(pbn::serialize_expression_matrix(m));
        return pbn::parse_binary_matrix(selected);
    }();
    pbn::Pbn net = pbn::infer_pbn(b, a.k, a.n_predictors, a.perturbation,
                                  pbn::resolve_threads(a.threads));
    with_output(a.out, [&](std::ostream& out) { pbn::serialize_pbn(net, out); });
}

void run_simulate(const SimulateArgs& a) {
    auto in = open_input(a.input);
    pbn::Pbn net = pbn::parse_pbn(in);
    pbn::State s0 = 0;
    if (!a.init.empty()) {
        if (a.init.size() != net.n()) {
            throw pbn::DimensionMismatch("initial state has " +
                                         std::to_string(a.init.size()) +
                                         " bits for " + std::to_string(net.n()) +
                                         " genes");
        }
        std::vector<std::uint8_t> bits;
        for (char c : a.init) {
            if (c != '0' && c != '1') {
                throw DataError("initial state must be a 0/1 string");
            }
            bits.push_back(std::uint8_t(c - '0'));
        }
        s0 = pbn::state_from_bits(bits);
    }
    auto engine = pbn::make_engine(a.seed, 0);
    std::vector<pbn::State> states =
        pbn::simulate(net, s0, a.burn_in, a.samples, engine);
    with_output(a.out, [&](std::ostream& out) {
        pbn::write_trajectory(states, net.n(), a.burn_in, a.seed, out);
    });
}

void run_analyze(const AnalyzeArgs& a) {
    auto in = open_input(a.input);
    pbn::Trajectory t = pbn::read_trajectory(in);
    pbn::StateHistogram h = pbn::histogram(t.states, t.n);
    pbn::KsReport report = pbn::ks_two_half_test(t.states, a.subsample, a.alpha);

    std::filesystem::path dir(a.out);
    std::filesystem::create_directories(dir);
    with_output((dir / "histogram.csv").string(), [&](std::ostream& out) {
        out << "# n=" << t.n << " T=" << t.burn_in << " N=" << t.states.size()
            << " G=" << a.subsample << " seed=" << t.seed << '\n';
        pbn::emit_histogram(h, out);
    });
    with_output((dir / "ks.txt").string(), [&](std::ostream& out) {
        pbn::write_ks_report(report, out);
    });
    pbn::write_ks_report(report, std::cout);
}

void run_oracle(const OracleArgs& a) {
    auto in = open_input(a.input);
    pbn::Pbn net = pbn::parse_pbn(in);
    pbn::TransitionMatrix P = pbn::build_transition_matrix(
        net, pbn::resolve_threads(a.threads), a.max_genes);
    std::vector<double> pi = pbn::stationary_distribution(P);
    with_output(a.out, [&](std::ostream& out) {
        out << "# n=" << net.n() << '\n';
        out << "state,probability\n";
        if (a.gray) {
            for (std::uint64_t g = 0; g < pi.size(); ++g) {
                out << g << ',' << pbn::format_double(pi[pbn::gray_encode(g)])
                    << '\n';
            }
        } else {
            for (std::uint64_t s = 0; s < pi.size(); ++s) {
                out << s << ',' << pbn::format_double(pi[s]) << '\n';
            }
        }
    });
}

void run_full_pipeline(const pbn::PipelineConfig& cfg) {
    pbn::PipelineResult result = pbn::run_pipeline(cfg);
    std::cout << "binary: " << result.binary_path << '\n'
              << "network: " << result.network_path << '\n'
              << "histogram: " << result.histogram_path << '\n'
              << "ks: " << result.ks_path << '\n'
              << "manifest: " << result.manifest_path << '\n';
    for (std::size_t chain = 0; chain < result.ks.size(); ++chain) {
        std::cout << "chain " << chain << ": D="
                  << pbn::format_double(result.ks[chain].statistic)
                  << " converged="
                  << (result.ks[chain].converged ? "true" : "false") << '\n';
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Infers probabilistic Boolean networks from steady-state expression "
        "data and characterises their steady-state distributions"};
    app.require_subcommand(1);

    DiscretizeArgs da;
    auto* discretize = app.add_subcommand(
        "discretize", "Threshold an expression matrix into a 0/1 matrix");
    discretize->add_option("--input", da.input, "expression matrix (TSV)");
    discretize->add_option("--genes", da.genes, "gene subset: comma list or file");
    discretize->add_option("--method", da.method,
                           "threshold method: mean|median|kmeans-log");
    discretize->add_option("--out", da.out, "output file, - for stdout");
    discretize->add_option("--threads", da.threads, "worker threads, 0 = auto");
    discretize->add_option("--config", da.config, "key=value file, wins over flags");

    InferArgs ia;
    auto* infer = app.add_subcommand(
        "infer", "Build a network from a discretised (or raw) matrix");
    infer->add_option("--input", ia.input,
                      "0/1 matrix (TSV); raw values if --method is given");
    infer->add_option("--genes", ia.genes, "gene subset: comma list or file");
    auto* infer_method = infer->add_option(
        "--method", ia.method, "discretise raw input first with this method");
    infer->add_option("--k", ia.k, "input-set size per predictor");
    infer->add_option("--n-predictors", ia.n_predictors,
                      "predictors kept per gene");
    infer->add_option("--perturbation", ia.perturbation,
                      "per-gene flip probability");
    infer->add_option("--out", ia.out, "output file, - for stdout");
    infer->add_option("--threads", ia.threads, "worker threads, 0 = auto");
    infer->add_option("--config", ia.config, "key=value file, wins over flags");

    SimulateArgs sa;
    auto* simulate = app.add_subcommand(
        "simulate", "Run the stochastic dynamics and record a trajectory");
    simulate->add_option("--input", sa.input, "network document (JSON)");
    simulate->add_option("--burn-in", sa.burn_in, "unrecorded steps T");
    simulate->add_option("--samples", sa.samples, "recorded steps N (even)");
    simulate->add_option("--seed", sa.seed, "random seed");
    simulate->add_option("--init", sa.init, "initial state bits, e.g. 0101");
    simulate->add_option("--out", sa.out, "trajectory file, - for stdout");
    simulate->add_option("--config", sa.config, "key=value file, wins over flags");

    AnalyzeArgs aa;
    auto* analyze = app.add_subcommand(
        "analyze", "Histogram a trajectory and test its halves for convergence");
    analyze->add_option("--input", aa.input, "trajectory file");
    analyze->add_option("--subsample", aa.subsample, "keep every G-th state");
    analyze->add_option("--alpha", aa.alpha, "significance level");
    analyze->add_option("--out", aa.out, "output directory");
    analyze->add_option("--config", aa.config, "key=value file, wins over flags");

    OracleArgs oa;
    auto* oracle = app.add_subcommand(
        "oracle", "Exact stationary distribution of a small network");
    oracle->add_option("--input", oa.input, "network document (JSON)");
    oracle->add_flag("--gray", oa.gray, "index rows by gray-decoded integer");
    oracle->add_option("--max-genes", oa.max_genes,
                       "dense-construction size cap");
    oracle->add_option("--out", oa.out, "output file, - for stdout");
    oracle->add_option("--threads", oa.threads, "worker threads, 0 = auto");
    oracle->add_option("--config", oa.config, "key=value file, wins over flags");

    pbn::PipelineConfig pc;
    std::string pipeline_genes, pipeline_method = "median", pipeline_config;
    auto* pipeline = app.add_subcommand(
        "pipeline", "discretize, infer, simulate, and analyze in one run");
    pipeline->add_option("--input", pc.input, "expression matrix (TSV)");
    pipeline->add_option("--genes", pipeline_genes,
                         "gene subset: comma list or file");
    pipeline->add_option("--method", pipeline_method,
                         "threshold method: mean|median|kmeans-log");
    pipeline->add_option("--k", pc.k, "input-set size per predictor");
    pipeline->add_option("--n-predictors", pc.n_predictors,
                         "predictors kept per gene");
    pipeline->add_option("--perturbation", pc.perturbation,
                         "per-gene flip probability");
    pipeline->add_option("--burn-in", pc.burn_in, "unrecorded steps T");
    pipeline->add_option("--samples", pc.samples,
                         "recorded steps N per chain (even)");
    pipeline->add_option("--subsample", pc.subsample, "keep every G-th state");
    pipeline->add_option("--repeats", pc.repeats, "independent chains R");
    pipeline->add_option("--alpha", pc.alpha, "significance level");
    pipeline->add_option("--seed", pc.seed, "random seed");
    pipeline->add_option("--out", pc.out_dir, "output directory");
    pipeline->add_option("--threads", pc.threads, "worker threads, 0 = auto");
    pipeline->add_option("--config", pipeline_config,
                         "key=value file, wins over flags");

    try {
        app.parse(argc, argv);

        if (discretize->parsed()) {
            Setters s{
                {"input", [&](const std::string& v) { da.input = v; }},
                {"genes", [&](const std::string& v) { da.genes = v; }},
                {"method", [&](const std::string& v) { da.method = v; }},
                {"out", [&](const std::string& v) { da.out = v; }},
                {"threads",
                 [&](const std::string& v) {
                     da.threads = parse_integer<unsigned>(v, "threads");
                 }},
            };
            apply_config(da.config, s);
            run_discretize(da);
        } else if (infer->parsed()) {
            ia.method_given = infer_method->count() > 0;
            Setters s{
                {"input", [&](const std::string& v) { ia.input = v; }},
                {"genes", [&](const std::string& v) { ia.genes = v; }},
                {"method",
                 [&](const std::string& v) {
                     ia.method = v;
                     ia.method_given = true;
                 }},
                {"k",
                 [&](const std::string& v) {
                     ia.k = parse_integer<std::size_t>(v, "k");
                 }},
                {"n-predictors",
                 [&](const std::string& v) {
                     ia.n_predictors = parse_integer<std::size_t>(v, "n-predictors");
                 }},
                {"perturbation",
                 [&](const std::string& v) {
                     ia.perturbation = parse_real(v, "perturbation");
                 }},
                {"out", [&](const std::string& v) { ia.out = v; }},
                {"threads",
                 [&](const std::string& v) {
                     ia.threads = parse_integer<unsigned>(v, "threads");
                 }},
            };
            apply_config(ia.config, s);
            run_infer(ia);
        } else if (simulate->parsed()) {
            Setters s{
                {"input", [&](const std::string& v) { sa.input = v; }},
                {"burn-in",
                 [&](const std::string& v) {
                     sa.burn_in = parse_integer<std::uint64_t>(v, "burn-in");
                 }},
                {"samples",
                 [&](const std::string& v) {
                     sa.samples = parse_integer<std::uint64_t>(v, "samples");
                 }},
                {"seed",
                 [&](const std::string& v) {
                     sa.seed = parse_integer<std::uint64_t>(v, "seed");
                 }},
                {"init", [&](const std::string& v) { sa.init = v; }},
                {"out", [&](const std::string& v) { sa.out = v; }},
            };
            apply_config(sa.config, s);
            run_simulate(sa);
        } else if (analyze->parsed()) {
            Setters s{
                {"input", [&](const std::string& v) { aa.input = v; }},
                {"subsample",
                 [&](const std::string& v) {
                     aa.subsample = parse_integer<std::size_t>(v, "subsample");
                 }},
                {"alpha",
                 [&](const std::string& v) { aa.alpha = parse_real(v, "alpha"); }},
                {"out", [&](const std::string& v) { aa.out = v; }},
            };
            apply_config(aa.config, s);
            run_analyze(aa);
        } else if (oracle->parsed()) {
            Setters s{
                {"input", [&](const std::string& v) { oa.input = v; }},
                {"gray",
                 [&](const std::string& v) { oa.gray = v == "true" || v == "1"; }},
                {"max-genes",
                 [&](const std::string& v) {
                     oa.max_genes = parse_integer<std::size_t>(v, "max-genes");
                 }},
                {"out", [&](const std::string& v) { oa.out = v; }},
                {"threads",
                 [&](const std::string& v) {
                     oa.threads = parse_integer<unsigned>(v, "threads");
                 }},
            };
            apply_config(oa.config, s);
            run_oracle(oa);
        } else if (pipeline->parsed()) {
            Setters s{
                {"input", [&](const std::string& v) { pc.input = v; }},
                {"genes", [&](const std::string& v) { pipeline_genes = v; }},
                {"method", [&](const std::string& v) { pipeline_method = v; }},
                {"k",
                 [&](const std::string& v) {
                     pc.k = parse_integer<std::size_t>(v, "k");
                 }},
                {"n-predictors",
                 [&](const std::string& v) {
                     pc.n_predictors = parse_integer<std::size_t>(v, "n-predictors");
                 }},
                {"perturbation",
                 [&](const std::string& v) {
                     pc.perturbation = parse_real(v, "perturbation");
                 }},
                {"burn-in",
                 [&](const std::string& v) {
                     pc.burn_in = parse_integer<std::uint64_t>(v, "burn-in");
                 }},
                {"samples",
                 [&](const std::string& v) {
                     pc.samples = parse_integer<std::uint64_t>(v, "samples");
                 }},
                {"subsample",
                 [&](const std::string& v) {
                     pc.subsample = parse_integer<std::size_t>(v, "subsample");
                 }},
                {"repeats",
                 [&](const std::string& v) {
                     pc.repeats = parse_integer<std::size_t>(v, "repeats");
                 }},
                {"alpha",
                 [&](const std::string& v) { pc.alpha = parse_real(v, "alpha"); }},
                {"seed",
                 [&](const std::string& v) {
                     pc.seed = parse_integer<std::uint64_t>(v, "seed");
                 }},
                {"out", [&](const std::string& v) { pc.out_dir = v; }},
                {"threads",
                 [&](const std::string& v) {
                     pc.threads = parse_integer<unsigned>(v, "threads");
                 }},
            };
            apply_config(pipeline_config, s);
            pc.genes = pbn::parse_gene_list(pipeline_genes);
            pc.method = pbn::threshold_method_from_string(pipeline_method);
            pc.threads = pbn::resolve_threads(pc.threads);
            run_full_pipeline(pc);
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const pbn::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const pbn::DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
