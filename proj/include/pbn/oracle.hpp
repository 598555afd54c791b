#pragma once

#include "pbn/pbn.hpp"
#include "pbn/ssd.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace pbn {

// Dense row-stochastic matrix over all 2^n states, indexed by plain binary
// state integers (gray coding is presentation only and lives in `ssd`).
class TransitionMatrix {
public:
    TransitionMatrix(std::size_t genes, std::vector<double> entries);

    std::size_t genes() const { return genes_; }
    std::size_t dim() const { return std::size_t{1} << genes_; }
    double operator()(std::size_t from, std::size_t to) const {
        return entries_[from * dim() + to];
    }
    const std::vector<double>& entries() const { return entries_; }

private:
    std::size_t genes_;
    std::vector<double> entries_;
};

// Exact one-step transition probabilities mirroring `step`: reach via a
// perturbation flip pattern, or via no perturbation and per-gene predictor
// draws. Dense construction, so n is capped (default 14 ~ 2^28 entries).
TransitionMatrix build_transition_matrix(const Pbn& net, unsigned threads = 1,
                                         std::size_t max_genes = 14);

// Stationary row vector: power iteration from uniform until the one-step
// change has L1 norm under 1e-10. Positivity of the matrix guarantees
// convergence; the iteration cap exists to surface precondition violations.
std::vector<double> stationary_distribution(const TransitionMatrix& P,
                                            double tolerance = 1e-10,
                                            std::size_t max_iterations = 1000000);

// Half the L1 distance between two distributions on the same state space.
double total_variation(std::span<const double> a, std::span<const double> b);

// Normalised histogram reindexed from gray keys to binary state integers,
// ready for comparison against a stationary distribution.
std::vector<double> distribution_from_histogram(const StateHistogram& h,
                                                std::size_t n);

} // namespace pbn
