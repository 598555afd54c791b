#pragma once

#include "pbn/expression_matrix.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pbn {

enum class ThresholdMethod { Mean, Median, KMeansLog };

ThresholdMethod threshold_method_from_string(std::string_view name);
std::string_view to_string(ThresholdMethod method);

// Discretised {0,1} matrix with the same shape and ids as its source.
class BinaryMatrix {
public:
    BinaryMatrix(std::vector<std::string> gene_ids,
                 std::vector<std::string> sample_ids,
                 std::vector<std::uint8_t> values);

    std::size_t gene_count() const { return gene_ids_.size(); }
    std::size_t sample_count() const { return sample_ids_.size(); }

    const std::vector<std::string>& gene_ids() const { return gene_ids_; }
    const std::vector<std::string>& sample_ids() const { return sample_ids_; }
    const std::vector<std::uint8_t>& values() const { return values_; }

    std::uint8_t operator()(std::size_t gene, std::size_t sample) const {
        return values_[gene * sample_ids_.size() + sample];
    }
    std::span<const std::uint8_t> row(std::size_t gene) const {
        return {values_.data() + gene * sample_ids_.size(), sample_ids_.size()};
    }

    bool operator==(const BinaryMatrix& other) const = default;

private:
    std::vector<std::string> gene_ids_;
    std::vector<std::string> sample_ids_;
    std::vector<std::uint8_t> values_;  // row-major, genes x samples
};

// Per-gene threshold: mean, lower median, or exp-midpoint of a 2-means fit on
// the log-transformed values (zeros mapped to log of min-positive/10).
double threshold(std::span<const double> row, ThresholdMethod method);

// One axis per the original algorithm; the pipeline only uses PerGene.
enum class DiscretizeAxis { PerGene, PerSample };

BinaryMatrix discretize(const ExpressionMatrix& m, ThresholdMethod method,
                        DiscretizeAxis axis = DiscretizeAxis::PerGene,
                        unsigned threads = 1);

// Threshold values that discretize() applied, one per row (or column).
std::vector<double> thresholds(const ExpressionMatrix& m, ThresholdMethod method,
                               DiscretizeAxis axis = DiscretizeAxis::PerGene);

// Same tab-separated layout as the expression format, values as literal 0/1.
void serialize_binary_matrix(const BinaryMatrix& b, std::ostream& out);
std::string serialize_binary_matrix(const BinaryMatrix& b);
BinaryMatrix parse_binary_matrix(std::istream& in);
BinaryMatrix parse_binary_matrix(std::string_view text);

} // namespace pbn
