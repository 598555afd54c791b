#pragma once

#include "pbn/infer.hpp"
#include "pbn/oracle.hpp"
#include "pbn/pbn.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace support {

inline pbn::Predictor identity_pred(std::uint32_t source) {
    return {{source}, {{1.0, 0.0}}, 1.0, 1.0};
}

inline pbn::Predictor negation_pred(std::uint32_t source) {
    return {{source}, {{-1.0, 0.5}}, 1.0, 1.0};
}

// Single-predictor-per-gene network: gene i copies (or negates) source i.
inline pbn::Pbn wiring_pbn(const std::vector<std::uint32_t>& sources,
                           const std::vector<bool>& negate, double p) {
    std::vector<std::string> ids;
    std::vector<std::vector<pbn::Predictor>> fns;
    for (std::size_t i = 0; i < sources.size(); ++i) {
        ids.push_back("g" + std::to_string(i));
        fns.push_back({negate[i] ? negation_pred(sources[i])
                                 : identity_pred(sources[i])});
    }
    return pbn::Pbn(std::move(ids), std::move(fns), p);
}

// Random network within the small-validation shape: up to `max_preds`
// predictors per gene, each over up to `max_k` inputs with random weights.
inline pbn::Pbn random_pbn(std::mt19937_64& eng, std::size_t n,
                           std::size_t max_k, std::size_t max_preds, double p) {
    auto unit = [&]() { return double(eng() >> 11) * 0x1.0p-53; };
    std::vector<std::string> ids;
    std::vector<std::vector<pbn::Predictor>> fns(n);
    for (std::size_t i = 0; i < n; ++i) {
        ids.push_back("g" + std::to_string(i));
        std::size_t count = 1 + eng() % max_preds;
        double cod_total = 0.0;
        std::vector<double> cods;
        for (std::size_t j = 0; j < count; ++j) {
            pbn::Predictor f;
            std::size_t k = 1 + eng() % max_k;
            std::vector<std::uint32_t> pool(n);
            for (std::size_t g = 0; g < n; ++g) pool[g] = std::uint32_t(g);
            for (std::size_t a = 0; a < k; ++a) {
                std::swap(pool[a], pool[a + eng() % (n - a)]);
            }
            f.inputs.assign(pool.begin(), pool.begin() + std::ptrdiff_t(k));
            std::sort(f.inputs.begin(), f.inputs.end());
            for (std::size_t w = 0; w < k + 1; ++w) {
                f.weights.w.push_back(unit() * 3.0 - 1.5);
            }
            f.cod = 0.05 + 0.95 * unit();
            cod_total += f.cod;
            cods.push_back(f.cod);
            f.probability = 1.0; // fixed below
            fns[i].push_back(std::move(f));
        }
        for (std::size_t j = 0; j < count; ++j) {
            fns[i][j].probability = cods[j] / cod_total;
        }
        // Guard the 1e-12 sum invariant against rounding.
        double sum = 0.0;
        for (const auto& f : fns[i]) sum += f.probability;
        fns[i].back().probability += 1.0 - sum;
    }
    return pbn::Pbn(std::move(ids), std::move(fns), p);
}

// Independent stationary-distribution route: direct linear solve of
// (P^T - I) pi = 0 with the last equation replaced by sum(pi) = 1.
inline std::vector<double> stationary_by_elimination(
    const pbn::TransitionMatrix& P) {
    const std::size_t d = P.dim();
    std::vector<std::vector<double>> a(d, std::vector<double>(d + 1, 0.0));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            a[i][j] = P(j, i) - (i == j ? 1.0 : 0.0);
        }
    }
    for (std::size_t j = 0; j < d; ++j) a[d - 1][j] = 1.0;
    a[d - 1][d] = 1.0;

    for (std::size_t col = 0; col < d; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < d; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        }
        if (std::abs(a[pivot][col]) < 1e-14) {
            throw std::runtime_error("singular system in test solver");
        }
        std::swap(a[col], a[pivot]);
        for (std::size_t r = 0; r < d; ++r) {
            if (r == col) continue;
            double factor = a[r][col] / a[col][col];
            for (std::size_t c = col; c <= d; ++c) {
                a[r][c] -= factor * a[col][c];
            }
        }
    }
    std::vector<double> pi(d);
    for (std::size_t i = 0; i < d; ++i) {
        pi[i] = a[i][d] / a[i][i];
    }
    return pi;
}

} // namespace support
