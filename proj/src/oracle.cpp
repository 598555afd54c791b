#include "pbn/oracle.hpp"

#include "pbn/errors.hpp"
#include "pbn/parallel.hpp"

#include <bit>
#include <cmath>
#include <string>

namespace pbn {

TransitionMatrix::TransitionMatrix(std::size_t genes,
                                   std::vector<double> entries)
    : genes_(genes), entries_(std::move(entries)) {
    if (entries_.size() != dim() * dim()) {
        throw DimensionMismatch("transition matrix over " +
                                std::to_string(genes_) + " genes needs " +
                                std::to_string(dim() * dim()) +
                                " entries, got " +
                                std::to_string(entries_.size()));
    }
    for (std::size_t row = 0; row < dim(); ++row) {
        double sum = 0.0;
        for (std::size_t col = 0; col < dim(); ++col) {
            double v = entries_[row * dim() + col];
            if (!(v >= 0.0)) {
                throw DataError("negative transition probability in row " +
                                std::to_string(row));
            }
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-12) {
            throw DataError("transition row " + std::to_string(row) +
                            " sums to " + std::to_string(sum));
        }
    }
}

TransitionMatrix build_transition_matrix(const Pbn& net, unsigned threads,
                                         std::size_t max_genes) {
    const std::size_t n = net.n();
    if (n > max_genes || n > 63) {
        throw NetworkTooLarge("dense transition matrix supports at most " +
                              std::to_string(std::min<std::size_t>(max_genes, 63)) +
                              " genes, got " + std::to_string(n));
    }
    const std::size_t dim = std::size_t{1} << n;
    const double p = net.perturbation();

    // p^h (1-p)^(n-h) for every possible flip count h.
    std::vector<double> flip_prob(n + 1);
    for (std::size_t h = 0; h <= n; ++h) {
        flip_prob[h] = std::pow(p, double(h)) * std::pow(1.0 - p, double(n - h));
    }
    const double no_perturb = flip_prob[0];

    std::vector<double> entries(dim * dim);
    parallel_for(dim, threads, [&](std::size_t from) {
        // Chance that gene i's drawn predictor outputs 1 from this state.
        std::vector<double> q(n);
        for (std::size_t i = 0; i < n; ++i) {
            double on = 0.0;
            for (const auto& f : net.functions()[i]) {
                if (eval_predictor(f, State(from), n)) on += f.probability;
            }
            q[i] = on;
        }
        double* row = entries.data() + from * dim;
        for (std::size_t to = 0; to < dim; ++to) {
            int h = std::popcount(from ^ to);
            double prob = h >= 1 ? flip_prob[std::size_t(h)] : 0.0;
            double fn = no_perturb;
            for (std::size_t i = 0; i < n; ++i) {
                fn *= (to >> (n - 1 - i)) & 1u ? q[i] : 1.0 - q[i];
            }
            row[to] = prob + fn;
        }
    });
    return TransitionMatrix(n, std::move(entries));
}

std::vector<double> stationary_distribution(const TransitionMatrix& P,
                                            double tolerance,
                                            std::size_t max_iterations) {
    const std::size_t dim = P.dim();
    std::vector<double> pi(dim, 1.0 / double(dim));
    std::vector<double> next(dim);
    for (std::size_t iter = 0; iter < max_iterations; ++iter) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t from = 0; from < dim; ++from) {
            const double w = pi[from];
            for (std::size_t to = 0; to < dim; ++to) {
                next[to] += w * P(from, to);
            }
        }
        double sum = 0.0;
        for (double v : next) sum += v;
        for (double& v : next) v /= sum;
        double change = 0.0;
        for (std::size_t s = 0; s < dim; ++s) {
            change += std::abs(next[s] - pi[s]);
        }
        pi.swap(next);
        if (change < tolerance) return pi;
    }
    throw NotConverged("power iteration did not reach an L1 change under " +
                       std::to_string(tolerance) + " within " +
                       std::to_string(max_iterations) + " iterations");
}

double total_variation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw DimensionMismatch("distributions over " + std::to_string(a.size()) +
                                " and " + std::to_string(b.size()) +
                                " states are not comparable");
    }
    double sum = 0.0;
    for (std::size_t s = 0; s < a.size(); ++s) {
        sum += std::abs(a[s] - b[s]);
    }
    return 0.5 * sum;
}

std::vector<double> distribution_from_histogram(const StateHistogram& h,
                                                std::size_t n) {
    if (h.total == 0) {
        throw EmptyHistogram("cannot normalise an empty histogram");
    }
    if (n > 63) {
        throw NetworkTooLarge("dense distribution supports at most 63 genes");
    }
    std::vector<double> dist(std::size_t{1} << n, 0.0);
    for (const auto& [gray_key, count] : h.counts) {
        if (gray_key >= dist.size()) {
            throw DimensionMismatch("histogram key " + std::to_string(gray_key) +
                                    " is out of range for " + std::to_string(n) +
                                    " genes");
        }
        dist[gray_encode(gray_key)] +=
            double(count) / static_cast<double>(h.total);
    }
    return dist;
}

} // namespace pbn
