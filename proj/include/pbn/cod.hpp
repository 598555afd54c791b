#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace pbn {

// Least-squares linear classifier weights: k input weights, bias last.
struct PerceptronWeights {
    std::vector<double> w;

    std::size_t arity() const { return w.empty() ? 0 : w.size() - 1; }
    bool operator==(const PerceptronWeights& other) const = default;
};

struct CodResult {
    double theta;                // (baseline - error) / baseline
    PerceptronWeights weights;
    double resubstitution_error; // thresholded misclassification rate e
    double baseline_error;       // best constant predictor's rate, in (0, 1]
};

// Minimum-norm least-squares fit of target on `inputs` (row-major k x n with
// n = target.size()) plus a constant bias row. The normal-equation matrix is
// inverted through its SVD with singular values under 1e-10 of the largest
// treated as zero, so rank deficiency (duplicated inputs) is well defined.
PerceptronWeights solve_perceptron(std::span<const std::uint8_t> inputs,
                                   std::size_t k,
                                   std::span<const std::uint8_t> target);

// Thresholded output: 1 iff w . (x, 1) >= 0.5.
int predict(const PerceptronWeights& weights, std::span<const std::uint8_t> x);

// Fits the perceptron and scores it against the best constant predictor.
// Throws ConstantTarget when target is all-0 or all-1 (baseline would be 0).
CodResult compute_cod(std::span<const std::uint8_t> inputs, std::size_t k,
                      std::span<const std::uint8_t> target);

} // namespace pbn
