#pragma once

#include "pbn/discretize.hpp"
#include "pbn/pbn.hpp"

#include <cstdint>
#include <vector>

namespace pbn {

// A buffer entry: a scored candidate input set, before probabilities exist.
struct ScoredPredictor {
    std::vector<std::uint32_t> inputs;
    PerceptronWeights weights;
    double cod;

    bool operator==(const ScoredPredictor& other) const = default;
};

// Candidates are kept ordered by descending COD with ties broken towards the
// lexicographically smaller input set, so results never depend on the order
// in which combinations were scored.
bool predictor_precedes(const ScoredPredictor& a, const ScoredPredictor& b);

// Bounded buffer of the best candidates seen so far.
class PredictorBuffer {
public:
    explicit PredictorBuffer(std::size_t capacity);

    // Admits only positive-COD candidates; evicts the worst beyond capacity.
    void offer(ScoredPredictor candidate);
    void merge(const PredictorBuffer& other);

    const std::vector<ScoredPredictor>& entries() const { return entries_; }

private:
    std::size_t capacity_;
    std::vector<ScoredPredictor> entries_; // ordered by predictor_precedes
};

struct EnumerationResult {
    // Per target gene, the kept candidates in descending-COD order. A gene
    // whose discretised row is constant gets an empty list and a set flag.
    std::vector<std::vector<ScoredPredictor>> per_target;
    std::vector<std::uint8_t> constant_target;
};

// Scores every C(m-1, k) input combination for every target gene and keeps
// the n_p best positive-COD ones per target.
EnumerationResult enumerate_predictors(const BinaryMatrix& b, std::size_t k,
                                       std::size_t n_p, unsigned threads = 1);

// probability_j = cod_j / sum of cods, per target.
std::vector<std::vector<Predictor>> assign_probabilities(
    const std::vector<std::vector<ScoredPredictor>>& per_target);

Pbn assemble_pbn(std::vector<std::string> gene_ids,
                 std::vector<std::vector<Predictor>> functions,
                 double perturbation);

// discretised matrix -> scored candidates -> probabilities -> network.
Pbn infer_pbn(const BinaryMatrix& b, std::size_t k, std::size_t n_p,
              double perturbation, unsigned threads = 1);

} // namespace pbn
