#pragma once

#include "pbn/cod.hpp"

#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pbn {

// One candidate function for a target gene: the input gene set, the fitted
// weights, the COD it scored, and its selection probability within the
// target's list. The owning position in Pbn::functions names the target.
struct Predictor {
    std::vector<std::uint32_t> inputs; // strictly ascending gene indices
    PerceptronWeights weights;         // inputs.size() + 1 entries
    double cod;
    double probability;

    bool operator==(const Predictor& other) const = default;
};

// Network state packed into a word: gene 0 occupies the most significant of
// the n used bits (bit n-1), gene n-1 occupies bit 0.
using State = std::uint64_t;

State state_from_bits(std::span<const std::uint8_t> bits);
std::vector<std::uint8_t> state_to_bits(State s, std::size_t n);

inline int state_bit(State s, std::size_t gene, std::size_t n) {
    return int((s >> (n - 1 - gene)) & 1u);
}

class Pbn {
public:
    Pbn(std::vector<std::string> gene_ids,
        std::vector<std::vector<Predictor>> functions, double perturbation);

    std::size_t n() const { return gene_ids_.size(); }
    const std::vector<std::string>& gene_ids() const { return gene_ids_; }
    const std::vector<std::vector<Predictor>>& functions() const {
        return functions_;
    }
    double perturbation() const { return perturbation_; }

    bool operator==(const Pbn& other) const = default;

private:
    std::vector<std::string> gene_ids_;
    std::vector<std::vector<Predictor>> functions_;
    double perturbation_;
};

// Evaluate one predictor against a packed state.
int eval_predictor(const Predictor& f, State s, std::size_t n);

// One synchronous update: every gene first flips independently with
// probability p, and if anything flipped the perturbed state is the result;
// otherwise each gene draws one of its predictors by probability and all
// genes update from the same source state.
State step(const Pbn& net, State s, std::mt19937_64& rng);

// T unrecorded burn-in steps, then N recorded steps. N must be even so the
// convergence check can compare equal halves.
std::vector<State> simulate(const Pbn& net, State s0, std::uint64_t burn_in,
                            std::uint64_t record, std::mt19937_64& rng);

// JSON document {version, n, gene_ids, perturbation, functions}; reals are
// written with 17 significant digits so parsing restores the exact doubles.
void serialize_pbn(const Pbn& net, std::ostream& out);
std::string serialize_pbn(const Pbn& net);
Pbn parse_pbn(std::istream& in);
Pbn parse_pbn(std::string_view text);

} // namespace pbn
