#include "pbn/cod.hpp"

#include "pbn/errors.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <string>

namespace pbn {

PerceptronWeights solve_perceptron(std::span<const std::uint8_t> inputs,
                                   std::size_t k,
                                   std::span<const std::uint8_t> target) {
    const std::size_t n = target.size();
    if (n == 0) {
        throw EmptyInput("perceptron fit needs at least one sample");
    }
    if (inputs.size() != k * n) {
        throw DimensionMismatch("input block of " + std::to_string(inputs.size()) +
                                " values is not " + std::to_string(k) + " rows x " +
                                std::to_string(n) + " samples");
    }

    // Augmented design: k input rows plus a ones row for the bias.
    const Eigen::Index d = static_cast<Eigen::Index>(k) + 1;
    Eigen::MatrixXd X(d, static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            X(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                inputs[r * n + c];
        }
    }
    X.row(d - 1).setOnes();
    Eigen::VectorXd y(static_cast<Eigen::Index>(n));
    for (std::size_t c = 0; c < n; ++c) {
        y(static_cast<Eigen::Index>(c)) = target[c];
    }

    Eigen::MatrixXd R = X * X.transpose();
    Eigen::VectorXd C = X * y;

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(R, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd& sigma = svd.singularValues();
    const double cutoff = 1e-10 * sigma(0);
    Eigen::VectorXd inv_sigma(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        inv_sigma(i) = sigma(i) > cutoff ? 1.0 / sigma(i) : 0.0;
    }
    Eigen::VectorXd a =
        svd.matrixV() * inv_sigma.asDiagonal() * (svd.matrixU().transpose() * C);

    PerceptronWeights weights;
    weights.w.assign(a.data(), a.data() + d);
    return weights;
}

int predict(const PerceptronWeights& weights, std::span<const std::uint8_t> x) {
    if (x.size() != weights.arity()) {
        throw DimensionMismatch("predictor expects " +
                                std::to_string(weights.arity()) +
                                " inputs, got " + std::to_string(x.size()));
    }
    double acc = weights.w.back();
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i]) acc += weights.w[i];
    }
    return acc >= 0.5 ? 1 : 0;
}

CodResult compute_cod(std::span<const std::uint8_t> inputs, std::size_t k,
                      std::span<const std::uint8_t> target) {
    const std::size_t n = target.size();
    std::size_t ones = static_cast<std::size_t>(
        std::count(target.begin(), target.end(), std::uint8_t{1}));
    if (ones == 0 || ones == n) {
        throw ConstantTarget("target is constant " +
                             std::to_string(ones == 0 ? 0 : 1) +
                             "; baseline error is zero");
    }

    CodResult result;
    result.weights = solve_perceptron(inputs, k, target);

    std::size_t misses = 0;
    std::vector<std::uint8_t> x(k);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < k; ++r) {
            x[r] = inputs[r * n + c];
        }
        if (predict(result.weights, x) != int(target[c])) ++misses;
    }

    double p1 = static_cast<double>(ones) / static_cast<double>(n);
    result.baseline_error = std::min(p1, 1.0 - p1);
    result.resubstitution_error = static_cast<double>(misses) / static_cast<double>(n);
    result.theta = (result.baseline_error - result.resubstitution_error) /
                   result.baseline_error;
    return result;
}

} // namespace pbn
