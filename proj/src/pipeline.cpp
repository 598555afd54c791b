#include "pbn/pipeline.hpp"

#include "pbn/errors.hpp"
#include "pbn/expression_matrix.hpp"
#include "pbn/format.hpp"
#include "pbn/infer.hpp"
#include "pbn/rng.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace pbn {

namespace {

std::string trimmed(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write '" + path.string() + "'");
    }
    return out;
}

} // namespace

void validate_config(const PipelineConfig& cfg) {
    if (cfg.input.empty()) {
        throw DataError("no input file given");
    }
    if (cfg.k < 1) {
        throw DataError("k must be at least 1");
    }
    if (cfg.n_predictors < 1) {
        throw DataError("predictor count per gene must be at least 1");
    }
    if (!(cfg.perturbation > 0.0) || !(cfg.perturbation < 0.5)) {
        throw DataError("perturbation probability must lie in (0, 0.5)");
    }
    if (cfg.samples % 2 != 0) {
        throw OddRecordLength("recorded step count must be even, got " +
                              std::to_string(cfg.samples));
    }
    if (cfg.samples < 2) {
        throw TooFewSamples("recorded step count must be at least 2");
    }
    if (cfg.subsample < 1) {
        throw DataError("subsample interval must be at least 1");
    }
    if (cfg.samples / 2 / cfg.subsample < 1) {
        throw TooFewSamples("sample count " + std::to_string(cfg.samples) +
                            " is too short for subsample interval " +
                            std::to_string(cfg.subsample));
    }
    if (cfg.repeats < 1) {
        throw DataError("repeat count must be at least 1");
    }
    if (!(cfg.alpha > 0.0) || !(cfg.alpha < 1.0)) {
        throw DataError("significance level must lie in (0, 1)");
    }
}

PipelineResult run_pipeline(const PipelineConfig& cfg) {
    validate_config(cfg);

    std::ifstream in(cfg.input, std::ios::binary);
    if (!in) {
        throw DataError("cannot read '" + cfg.input + "'");
    }
    ExpressionMatrix matrix = parse_expression_matrix(in);
    if (!cfg.genes.empty()) {
        matrix = select_genes(matrix, cfg.genes);
    }

    std::filesystem::path dir(cfg.out_dir);
    std::filesystem::create_directories(dir);

    PipelineResult result;

    BinaryMatrix binary = discretize(matrix, cfg.method, DiscretizeAxis::PerGene,
                                     cfg.threads);
    {
        auto out = open_output(dir / "binary.tsv");
        serialize_binary_matrix(binary, out);
        result.binary_path = (dir / "binary.tsv").string();
    }

    Pbn net = infer_pbn(binary, cfg.k, cfg.n_predictors, cfg.perturbation,
                        cfg.threads);
    {
        auto out = open_output(dir / "network.json");
        serialize_pbn(net, out);
        result.network_path = (dir / "network.json").string();
    }

    StateHistogram pooled;
    for (std::size_t chain = 0; chain < cfg.repeats; ++chain) {
        auto engine = make_engine(cfg.seed, chain);
        std::vector<State> states =
            simulate(net, State{0}, cfg.burn_in, cfg.samples, engine);
        merge_histogram(pooled, histogram(states, net.n()));
        result.ks.push_back(ks_two_half_test(states, cfg.subsample, cfg.alpha));
    }

    {
        auto out = open_output(dir / "histogram.csv");
        out << "# n=" << net.n() << " T=" << cfg.burn_in << " N=" << cfg.samples
            << " G=" << cfg.subsample << " seed=" << cfg.seed << '\n';
        emit_histogram(pooled, out);
        result.histogram_path = (dir / "histogram.csv").string();
    }
    {
        auto out = open_output(dir / "ks.txt");
        for (std::size_t chain = 0; chain < result.ks.size(); ++chain) {
            if (cfg.repeats > 1) out << "chain=" << chain << '\n';
            write_ks_report(result.ks[chain], out);
        }
        result.ks_path = (dir / "ks.txt").string();
    }
    {
        auto out = open_output(dir / "manifest.txt");
        write_manifest(cfg, out);
        result.manifest_path = (dir / "manifest.txt").string();
    }
    return result;
}

void write_manifest(const PipelineConfig& cfg, std::ostream& out) {
    out << "input=" << cfg.input << '\n';
    out << "genes=";
    for (std::size_t i = 0; i < cfg.genes.size(); ++i) {
        if (i) out << ',';
        out << cfg.genes[i];
    }
    out << '\n';
    out << "method=" << to_string(cfg.method) << '\n';
    out << "k=" << cfg.k << '\n';
    out << "n-predictors=" << cfg.n_predictors << '\n';
    out << "perturbation=" << format_double(cfg.perturbation) << '\n';
    out << "burn-in=" << cfg.burn_in << '\n';
    out << "samples=" << cfg.samples << '\n';
    out << "subsample=" << cfg.subsample << '\n';
    out << "repeats=" << cfg.repeats << '\n';
    out << "alpha=" << format_double(cfg.alpha) << '\n';
    out << "seed=" << cfg.seed << '\n';
    out << "out=" << cfg.out_dir << '\n';
    out << "threads=" << cfg.threads << '\n';
}

std::vector<std::pair<std::string, std::string>> parse_key_values(
    std::istream& in) {
    std::vector<std::pair<std::string, std::string>> pairs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string stripped = trimmed(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw MalformedRow("config line " + std::to_string(line_no) +
                               " is not key=value: '" + line + "'");
        }
        pairs.emplace_back(trimmed(stripped.substr(0, eq)),
                           trimmed(stripped.substr(eq + 1)));
    }
    return pairs;
}

std::vector<std::string> parse_gene_list(const std::string& arg) {
    if (arg.empty()) return {};
    std::string path;
    if (arg[0] == '@') {
        path = arg.substr(1);
    } else if (arg.find(',') == std::string::npos &&
               std::filesystem::exists(arg)) {
        path = arg;
    }
    std::vector<std::string> genes;
    if (!path.empty()) {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            throw DataError("cannot read gene list '" + path + "'");
        }
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            std::string id = trimmed(line);
            if (!id.empty()) genes.push_back(std::move(id));
        }
        return genes;
    }
    std::size_t start = 0;
    while (start <= arg.size()) {
        std::size_t comma = arg.find(',', start);
        std::string id = trimmed(comma == std::string::npos
                                     ? arg.substr(start)
                                     : arg.substr(start, comma - start));
        if (!id.empty()) genes.push_back(std::move(id));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return genes;
}

} // namespace pbn
