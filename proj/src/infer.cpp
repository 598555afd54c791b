#include "pbn/infer.hpp"

#include "pbn/cod.hpp"
#include "pbn/errors.hpp"
#include "pbn/parallel.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace pbn {

bool predictor_precedes(const ScoredPredictor& a, const ScoredPredictor& b) {
    if (a.cod != b.cod) return a.cod > b.cod;
    return a.inputs < b.inputs;
}

PredictorBuffer::PredictorBuffer(std::size_t capacity) : capacity_(capacity) {
    if (capacity_ == 0) {
        throw DataError("predictor buffer capacity must be at least 1");
    }
    entries_.reserve(capacity_ + 1);
}

void PredictorBuffer::offer(ScoredPredictor candidate) {
    if (!(candidate.cod > 0.0)) return;
    if (entries_.size() == capacity_ &&
        !predictor_precedes(candidate, entries_.back())) {
        return;
    }
    auto pos = std::lower_bound(entries_.begin(), entries_.end(), candidate,
                                predictor_precedes);
    entries_.insert(pos, std::move(candidate));
    if (entries_.size() > capacity_) entries_.pop_back();
}

void PredictorBuffer::merge(const PredictorBuffer& other) {
    for (const auto& e : other.entries_) offer(e);
}

EnumerationResult enumerate_predictors(const BinaryMatrix& b, std::size_t k,
                                       std::size_t n_p, unsigned threads) {
    const std::size_t m = b.gene_count();
    const std::size_t n = b.sample_count();
    if (k < 1) {
        throw DataError("input-set size k must be at least 1");
    }
    if (k > m - 1) {
        throw KTooLarge("k = " + std::to_string(k) + " but only " +
                        std::to_string(m - 1) + " candidate inputs exist");
    }
    if (n_p < 1) {
        throw DataError("predictor count per gene must be at least 1");
    }

    EnumerationResult result;
    result.per_target.resize(m);
    result.constant_target.assign(m, 0);

    parallel_for(m, threads, [&](std::size_t target) {
        auto y = b.row(target);
        if (std::find(y.begin(), y.end(), std::uint8_t{1}) == y.end() ||
            std::find(y.begin(), y.end(), std::uint8_t{0}) == y.end()) {
            result.constant_target[target] = 1;
            return;
        }

        // Candidate gene indices, ascending, target excluded.
        std::vector<std::uint32_t> pool;
        pool.reserve(m - 1);
        for (std::size_t g = 0; g < m; ++g) {
            if (g != target) pool.push_back(std::uint32_t(g));
        }

        PredictorBuffer buffer(n_p);
        std::vector<std::size_t> choose(k);
        std::iota(choose.begin(), choose.end(), 0);
        std::vector<std::uint8_t> block(k * n);
        while (true) {
            ScoredPredictor cand;
            cand.inputs.resize(k);
            for (std::size_t r = 0; r < k; ++r) {
                cand.inputs[r] = pool[choose[r]];
                auto row = b.row(cand.inputs[r]);
                std::copy(row.begin(), row.end(), block.begin() + r * n);
            }
            CodResult scored = compute_cod(block, k, y);
            cand.weights = std::move(scored.weights);
            cand.cod = scored.theta;
            buffer.offer(std::move(cand));

            // Next combination in lexicographic order.
            std::size_t i = k;
            while (i > 0 && choose[i - 1] == pool.size() - k + i - 1) --i;
            if (i == 0) break;
            ++choose[i - 1];
            for (std::size_t j = i; j < k; ++j) choose[j] = choose[j - 1] + 1;
        }
        result.per_target[target] = buffer.entries();
    });
    return result;
}

std::vector<std::vector<Predictor>> assign_probabilities(
    const std::vector<std::vector<ScoredPredictor>>& per_target) {
    std::vector<std::vector<Predictor>> out(per_target.size());
    for (std::size_t target = 0; target < per_target.size(); ++target) {
        const auto& entries = per_target[target];
        if (entries.empty()) {
            throw EmptyPredictorList("gene index " + std::to_string(target) +
                                     " has no positive-COD predictor");
        }
        double total = 0.0;
        for (const auto& e : entries) total += e.cod;
        out[target].reserve(entries.size());
        for (const auto& e : entries) {
            Predictor f;
            f.inputs = e.inputs;
            f.weights = e.weights;
            f.cod = e.cod;
            f.probability = e.cod / total;
            out[target].push_back(std::move(f));
        }
    }
    return out;
}

Pbn assemble_pbn(std::vector<std::string> gene_ids,
                 std::vector<std::vector<Predictor>> functions,
                 double perturbation) {
    return Pbn(std::move(gene_ids), std::move(functions), perturbation);
}

Pbn infer_pbn(const BinaryMatrix& b, std::size_t k, std::size_t n_p,
              double perturbation, unsigned threads) {
    EnumerationResult scored = enumerate_predictors(b, k, n_p, threads);
    for (std::size_t g = 0; g < b.gene_count(); ++g) {
        if (scored.constant_target[g]) {
            throw ConstantTarget("gene '" + b.gene_ids()[g] +
                                 "' is constant after discretisation and "
                                 "cannot be predicted");
        }
    }
    return assemble_pbn(b.gene_ids(), assign_probabilities(scored.per_target),
                        perturbation);
}

} // namespace pbn
