#include "pbn/expression_matrix.hpp"

#include "pbn/errors.hpp"
#include "pbn/format.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace pbn {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find('\t', start);
        if (pos == std::string_view::npos) {
            cells.push_back(line.substr(start));
            return cells;
        }
        cells.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

double parse_cell(std::string_view cell, std::size_t line_no,
                  std::string_view gene) {
    auto fail = [&](std::string_view what) -> std::string {
        std::string msg(what);
        msg += " '";
        msg += cell;
        msg += "' for gene '";
        msg += gene;
        msg += "' on line ";
        msg += std::to_string(line_no);
        return msg;
    };
    if (cell.empty() || cell == "NA" || cell == "na" || cell == "NaN" ||
        cell == "nan") {
        throw MissingValue(fail("missing value"));
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc() || ptr != cell.data() + cell.size()) {
        throw NonNumericValue(fail("non-numeric value"));
    }
    if (!std::isfinite(value)) {
        throw NonNumericValue(fail("non-finite value"));
    }
    if (value < 0.0) {
        throw NegativeValue(fail("negative value"));
    }
    return value;
}

} // namespace

ExpressionMatrix::ExpressionMatrix(std::vector<std::string> gene_ids,
                                   std::vector<std::string> sample_ids,
                                   std::vector<double> values)
    : gene_ids_(std::move(gene_ids)),
      sample_ids_(std::move(sample_ids)),
      values_(std::move(values)) {
    if (gene_ids_.empty()) {
        throw EmptyInput("expression matrix has no genes");
    }
    if (sample_ids_.size() < 2) {
        throw MalformedRow("expression matrix needs at least two samples, got " +
                           std::to_string(sample_ids_.size()));
    }
    if (values_.size() != gene_ids_.size() * sample_ids_.size()) {
        throw DimensionMismatch(
            "value count " + std::to_string(values_.size()) + " does not match " +
            std::to_string(gene_ids_.size()) + " genes x " +
            std::to_string(sample_ids_.size()) + " samples");
    }
    std::unordered_set<std::string_view> seen;
    for (const auto& id : gene_ids_) {
        if (!seen.insert(id).second) {
            throw DuplicateGeneId("duplicate gene id '" + id + "'");
        }
    }
    for (std::size_t g = 0; g < gene_ids_.size(); ++g) {
        for (std::size_t s = 0; s < sample_ids_.size(); ++s) {
            double v = values_[g * sample_ids_.size() + s];
            if (!std::isfinite(v)) {
                throw NonNumericValue("non-finite value for gene '" + gene_ids_[g] + "'");
            }
            if (v < 0.0) {
                throw NegativeValue("negative value for gene '" + gene_ids_[g] + "'");
            }
        }
    }
}

ExpressionMatrix parse_expression_matrix(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;

    // Header: skip leading blank lines, then sample ids.
    std::vector<std::string> sample_ids;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = split_tabs(line);
        if (cells.size() < 3) {
            throw MalformedRow("header on line " + std::to_string(line_no) +
                               " lists " + std::to_string(cells.size() - 1) +
                               " samples; need at least 2");
        }
        for (std::size_t i = 1; i < cells.size(); ++i) {
            sample_ids.emplace_back(cells[i]);
        }
        break;
    }
    if (sample_ids.empty()) {
        throw EmptyInput("no header line in expression input");
    }

    std::vector<std::string> gene_ids;
    std::vector<double> values;
    std::unordered_set<std::string> seen;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = split_tabs(line);
        if (cells.size() != sample_ids.size() + 1) {
            throw MalformedRow("row on line " + std::to_string(line_no) + " has " +
                               std::to_string(cells.size() - 1) + " values; expected " +
                               std::to_string(sample_ids.size()));
        }
        std::string gene(cells[0]);
        if (gene.empty()) {
            throw MalformedRow("empty gene id on line " + std::to_string(line_no));
        }
        if (!seen.insert(gene).second) {
            throw DuplicateGeneId("duplicate gene id '" + gene + "' on line " +
                                  std::to_string(line_no));
        }
        for (std::size_t i = 1; i < cells.size(); ++i) {
            values.push_back(parse_cell(cells[i], line_no, gene));
        }
        gene_ids.push_back(std::move(gene));
    }
    if (gene_ids.empty()) {
        throw EmptyInput("expression input has a header but no gene rows");
    }
    return ExpressionMatrix(std::move(gene_ids), std::move(sample_ids),
                            std::move(values));
}

ExpressionMatrix parse_expression_matrix(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_expression_matrix(in);
}

void serialize_expression_matrix(const ExpressionMatrix& m, std::ostream& out) {
    out << "gene";
    for (const auto& s : m.sample_ids()) out << '\t' << s;
    out << '\n';
    for (std::size_t g = 0; g < m.gene_count(); ++g) {
        out << m.gene_ids()[g];
        for (std::size_t s = 0; s < m.sample_count(); ++s) {
            out << '\t' << format_double(m(g, s));
        }
        out << '\n';
    }
}

std::string serialize_expression_matrix(const ExpressionMatrix& m) {
    std::ostringstream out;
    serialize_expression_matrix(m, out);
    return out.str();
}

ExpressionMatrix select_genes(const ExpressionMatrix& m,
                              std::span<const std::string> wanted) {
    std::unordered_map<std::string_view, std::size_t> index;
    for (std::size_t g = 0; g < m.gene_count(); ++g) {
        index.emplace(m.gene_ids()[g], g);
    }
    std::vector<std::string> gene_ids;
    std::vector<double> values;
    gene_ids.reserve(wanted.size());
    values.reserve(wanted.size() * m.sample_count());
    for (const auto& id : wanted) {
        auto it = index.find(id);
        if (it == index.end()) {
            throw UnknownGeneId("unknown gene id '" + id + "'");
        }
        gene_ids.push_back(id);
        auto row = m.row(it->second);
        values.insert(values.end(), row.begin(), row.end());
    }
    return ExpressionMatrix(std::move(gene_ids),
                            std::vector<std::string>(m.sample_ids()),
                            std::move(values));
}

} // namespace pbn
