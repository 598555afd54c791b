#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pbn {

// Genes-by-samples matrix of normalised expression ratios. All values are
// finite and non-negative, gene ids are pairwise distinct, and there are at
// least two samples. Immutable after construction.
class ExpressionMatrix {
public:
    ExpressionMatrix(std::vector<std::string> gene_ids,
                     std::vector<std::string> sample_ids,
                     std::vector<double> values);

    std::size_t gene_count() const { return gene_ids_.size(); }
    std::size_t sample_count() const { return sample_ids_.size(); }

    const std::vector<std::string>& gene_ids() const { return gene_ids_; }
    const std::vector<std::string>& sample_ids() const { return sample_ids_; }
    const std::vector<double>& values() const { return values_; }

    double operator()(std::size_t gene, std::size_t sample) const {
        return values_[gene * sample_ids_.size() + sample];
    }
    std::span<const double> row(std::size_t gene) const {
        return {values_.data() + gene * sample_ids_.size(), sample_ids_.size()};
    }

    bool operator==(const ExpressionMatrix& other) const = default;

private:
    std::vector<std::string> gene_ids_;
    std::vector<std::string> sample_ids_;
    std::vector<double> values_;  // row-major, genes x samples
};

// Tab-separated input: first line is a header whose first cell is ignored and
// remaining cells are sample ids; each following line is a gene id plus one
// decimal value per sample. The literal cell "NA" is rejected as MissingValue.
ExpressionMatrix parse_expression_matrix(std::istream& in);
ExpressionMatrix parse_expression_matrix(std::string_view text);

void serialize_expression_matrix(const ExpressionMatrix& m, std::ostream& out);
std::string serialize_expression_matrix(const ExpressionMatrix& m);

// Row subset/reorder; sample axis and values are untouched.
ExpressionMatrix select_genes(const ExpressionMatrix& m,
                              std::span<const std::string> wanted);

} // namespace pbn
