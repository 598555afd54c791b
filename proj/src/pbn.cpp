#include "pbn/pbn.hpp"

#include "pbn/errors.hpp"
#include "pbn/rng.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace pbn {

State state_from_bits(std::span<const std::uint8_t> bits) {
    if (bits.size() > 64) {
        throw NetworkTooLarge("packed states support at most 64 genes, got " +
                              std::to_string(bits.size()));
    }
    State s = 0;
    for (std::uint8_t b : bits) {
        if (b != 0 && b != 1) {
            throw NonNumericValue("state bit must be 0 or 1, got " +
                                  std::to_string(int(b)));
        }
        s = (s << 1) | b;
    }
    return s;
}

std::vector<std::uint8_t> state_to_bits(State s, std::size_t n) {
    std::vector<std::uint8_t> bits(n);
    for (std::size_t i = 0; i < n; ++i) {
        bits[i] = std::uint8_t((s >> (n - 1 - i)) & 1u);
    }
    return bits;
}

Pbn::Pbn(std::vector<std::string> gene_ids,
         std::vector<std::vector<Predictor>> functions, double perturbation)
    : gene_ids_(std::move(gene_ids)),
      functions_(std::move(functions)),
      perturbation_(perturbation) {
    const std::size_t n = gene_ids_.size();
    if (n == 0) {
        throw EmptyInput("network has no genes");
    }
    if (functions_.size() != n) {
        throw DimensionMismatch("network has " + std::to_string(n) +
                                " genes but " + std::to_string(functions_.size()) +
                                " function lists");
    }
    if (!(perturbation_ > 0.0) || !(perturbation_ < 0.5)) {
        throw DataError("perturbation probability must lie in (0, 0.5), got " +
                        std::to_string(perturbation_));
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto& fns = functions_[i];
        if (fns.empty()) {
            throw EmptyPredictorList("gene '" + gene_ids_[i] +
                                     "' has no predictors");
        }
        double total = 0.0;
        for (const auto& f : fns) {
            if (!std::is_sorted(f.inputs.begin(), f.inputs.end()) ||
                std::adjacent_find(f.inputs.begin(), f.inputs.end()) !=
                    f.inputs.end()) {
                throw DataError("predictor inputs for gene '" + gene_ids_[i] +
                                "' are not strictly ascending");
            }
            for (std::uint32_t in : f.inputs) {
                if (in >= n) {
                    throw DimensionMismatch("predictor for gene '" + gene_ids_[i] +
                                            "' references gene index " +
                                            std::to_string(in) + " of " +
                                            std::to_string(n));
                }
            }
            if (f.weights.w.size() != f.inputs.size() + 1) {
                throw DimensionMismatch(
                    "predictor for gene '" + gene_ids_[i] + "' has " +
                    std::to_string(f.weights.w.size()) + " weights for " +
                    std::to_string(f.inputs.size()) + " inputs");
            }
            for (double w : f.weights.w) {
                if (!std::isfinite(w)) {
                    throw DataError("non-finite weight for gene '" + gene_ids_[i] +
                                    "'");
                }
            }
            if (!(f.cod > 0.0) || !std::isfinite(f.cod)) {
                throw DataError("predictor COD for gene '" + gene_ids_[i] +
                                "' must be positive");
            }
            if (!(f.probability > 0.0) || f.probability > 1.0) {
                throw DataError("predictor probability for gene '" + gene_ids_[i] +
                                "' must lie in (0, 1]");
            }
            total += f.probability;
        }
        if (std::abs(total - 1.0) > 1e-12) {
            throw DataError("predictor probabilities for gene '" + gene_ids_[i] +
                            "' sum to " + std::to_string(total));
        }
    }
}

int eval_predictor(const Predictor& f, State s, std::size_t n) {
    double acc = f.weights.w.back();
    for (std::size_t i = 0; i < f.inputs.size(); ++i) {
        if ((s >> (n - 1 - f.inputs[i])) & 1u) acc += f.weights.w[i];
    }
    return acc >= 0.5 ? 1 : 0;
}

State step(const Pbn& net, State s, std::mt19937_64& rng) {
    const std::size_t n = net.n();
    const double p = net.perturbation();

    State perturbed = s;
    bool flipped = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (next_unit(rng) < p) {
            perturbed ^= State{1} << (n - 1 - i);
            flipped = true;
        }
    }
    if (flipped) return perturbed;

    State next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& fns = net.functions()[i];
        // One draw per gene regardless of list length keeps the stream layout
        // independent of the network, so seeds mean the same thing everywhere.
        double u = next_unit(rng);
        std::size_t j = 0;
        double acc = 0.0;
        for (; j + 1 < fns.size(); ++j) {
            acc += fns[j].probability;
            if (u < acc) break;
        }
        if (eval_predictor(fns[j], s, n)) {
            next |= State{1} << (n - 1 - i);
        }
    }
    return next;
}

std::vector<State> simulate(const Pbn& net, State s0, std::uint64_t burn_in,
                            std::uint64_t record, std::mt19937_64& rng) {
    if (net.n() > 64) {
        throw NetworkTooLarge("simulation supports at most 64 genes, got " +
                              std::to_string(net.n()));
    }
    if (record % 2 != 0) {
        throw OddRecordLength("recorded step count must be even, got " +
                              std::to_string(record));
    }
    if (record < 2) {
        throw TooFewSamples("recorded step count must be at least 2, got " +
                            std::to_string(record));
    }
    State s = s0;
    for (std::uint64_t t = 0; t < burn_in; ++t) {
        s = step(net, s, rng);
    }
    std::vector<State> out;
    out.reserve(record);
    for (std::uint64_t t = 0; t < record; ++t) {
        s = step(net, s, rng);
        out.push_back(s);
    }
    return out;
}

namespace {

void write_escaped(std::ostream& out, std::string_view s) {
    out << '"';
    for (char c : s) {
        switch (c) {
        case '"': out << "\\\""; break;
        case '\\': out << "\\\\"; break;
        case '\n': out << "\\n"; break;
        case '\t': out << "\\t"; break;
        case '\r': out << "\\r"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out << buf;
            } else {
                out << c;
            }
        }
    }
    out << '"';
}

void write_real(std::ostream& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
}

} // namespace

void serialize_pbn(const Pbn& net, std::ostream& out) {
    out << "{\n  \"version\": 1,\n  \"n\": " << net.n() << ",\n  \"gene_ids\": [";
    for (std::size_t i = 0; i < net.n(); ++i) {
        if (i) out << ", ";
        write_escaped(out, net.gene_ids()[i]);
    }
    out << "],\n  \"perturbation\": ";
    write_real(out, net.perturbation());
    out << ",\n  \"functions\": [\n";
    for (std::size_t i = 0; i < net.n(); ++i) {
        out << "    [\n";
        const auto& fns = net.functions()[i];
        for (std::size_t j = 0; j < fns.size(); ++j) {
            const auto& f = fns[j];
            out << "      {\"inputs\": [";
            for (std::size_t a = 0; a < f.inputs.size(); ++a) {
                if (a) out << ", ";
                out << f.inputs[a];
            }
            out << "], \"weights\": [";
            for (std::size_t a = 0; a < f.weights.w.size(); ++a) {
                if (a) out << ", ";
                write_real(out, f.weights.w[a]);
            }
            out << "], \"cod\": ";
            write_real(out, f.cod);
            out << ", \"probability\": ";
            write_real(out, f.probability);
            out << '}' << (j + 1 < fns.size() ? "," : "") << '\n';
        }
        out << "    ]" << (i + 1 < net.n() ? "," : "") << '\n';
    }
    out << "  ]\n}\n";
}

std::string serialize_pbn(const Pbn& net) {
    std::ostringstream out;
    serialize_pbn(net, out);
    return out.str();
}

Pbn parse_pbn(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("invalid network document: ") + e.what());
    }
    try {
        if (!doc.is_object()) {
            throw DataError("network document must be a JSON object");
        }
        if (doc.at("version").get<int>() != 1) {
            throw DataError("unsupported network document version");
        }
        auto gene_ids = doc.at("gene_ids").get<std::vector<std::string>>();
        if (doc.at("n").get<std::size_t>() != gene_ids.size()) {
            throw DimensionMismatch("field n does not match gene_ids length");
        }
        double perturbation = doc.at("perturbation").get<double>();
        std::vector<std::vector<Predictor>> functions;
        for (const auto& gene_fns : doc.at("functions")) {
            std::vector<Predictor> fns;
            for (const auto& jf : gene_fns) {
                Predictor f;
                f.inputs = jf.at("inputs").get<std::vector<std::uint32_t>>();
                f.weights.w = jf.at("weights").get<std::vector<double>>();
                f.cod = jf.at("cod").get<double>();
                f.probability = jf.at("probability").get<double>();
                fns.push_back(std::move(f));
            }
            functions.push_back(std::move(fns));
        }
        return Pbn(std::move(gene_ids), std::move(functions), perturbation);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("invalid network document: ") + e.what());
    }
}

Pbn parse_pbn(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_pbn(in);
}

} // namespace pbn
