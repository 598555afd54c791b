#include "pbn/discretize.hpp"

#include "pbn/errors.hpp"
#include "pbn/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace pbn {

ThresholdMethod threshold_method_from_string(std::string_view name) {
    if (name == "mean") return ThresholdMethod::Mean;
    if (name == "median") return ThresholdMethod::Median;
    if (name == "kmeans-log" || name == "kmeans_log" || name == "kmeans") {
        return ThresholdMethod::KMeansLog;
    }
    throw DataError("unknown threshold method '" + std::string(name) +
                    "'; expected mean, median, or kmeans-log");
}

std::string_view to_string(ThresholdMethod method) {
    switch (method) {
    case ThresholdMethod::Mean: return "mean";
    case ThresholdMethod::Median: return "median";
    case ThresholdMethod::KMeansLog: return "kmeans-log";
    }
    return "?";
}

BinaryMatrix::BinaryMatrix(std::vector<std::string> gene_ids,
                           std::vector<std::string> sample_ids,
                           std::vector<std::uint8_t> values)
    : gene_ids_(std::move(gene_ids)),
      sample_ids_(std::move(sample_ids)),
      values_(std::move(values)) {
    if (gene_ids_.empty()) {
        throw EmptyInput("binary matrix has no genes");
    }
    if (sample_ids_.size() < 2) {
        throw MalformedRow("binary matrix needs at least two samples, got " +
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
    for (std::uint8_t v : values_) {
        if (v != 0 && v != 1) {
            throw NonNumericValue("binary matrix entry must be 0 or 1, got " +
                                  std::to_string(int(v)));
        }
    }
}

namespace {

double threshold_mean(std::span<const double> row) {
    return std::accumulate(row.begin(), row.end(), 0.0) /
           static_cast<double>(row.size());
}

// Lower median: the floor((n+1)/2)-th order statistic, always a data value.
double threshold_median(std::span<const double> row) {
    std::vector<double> sorted(row.begin(), row.end());
    std::size_t idx = (sorted.size() + 1) / 2 - 1;
    std::nth_element(sorted.begin(), sorted.begin() + idx, sorted.end());
    return sorted[idx];
}

// 2-means on log values (Lloyd, centroids seeded at min and max), threshold
// at exp of the centroid midpoint. Zeros enter as log(min positive / 10).
double threshold_kmeans_log(std::span<const double> row) {
    if (std::adjacent_find(row.begin(), row.end(), std::not_equal_to<>()) ==
        row.end()) {
        throw DegenerateRow("all values identical; two clusters impossible");
    }
    double min_positive = std::numeric_limits<double>::infinity();
    for (double v : row) {
        if (v > 0.0 && v < min_positive) min_positive = v;
    }
    double zero_log = std::log(min_positive / 10.0);
    std::vector<double> logs;
    logs.reserve(row.size());
    for (double v : row) {
        logs.push_back(v > 0.0 ? std::log(v) : zero_log);
    }
    auto [min_it, max_it] = std::minmax_element(logs.begin(), logs.end());
    double c0 = *min_it, c1 = *max_it;
    std::vector<std::uint8_t> assign(logs.size(), 0);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < logs.size(); ++i) {
            std::uint8_t a = std::abs(logs[i] - c0) <= std::abs(logs[i] - c1) ? 0 : 1;
            if (a != assign[i]) {
                assign[i] = a;
                changed = true;
            }
        }
        double sum[2] = {0.0, 0.0};
        std::size_t cnt[2] = {0, 0};
        for (std::size_t i = 0; i < logs.size(); ++i) {
            sum[assign[i]] += logs[i];
            ++cnt[assign[i]];
        }
        if (cnt[0]) c0 = sum[0] / static_cast<double>(cnt[0]);
        if (cnt[1]) c1 = sum[1] / static_cast<double>(cnt[1]);
    }
    return std::exp((c0 + c1) / 2.0);
}

} // namespace

double threshold(std::span<const double> row, ThresholdMethod method) {
    if (row.size() < 2) {
        throw DegenerateRow("need at least two values to threshold, got " +
                            std::to_string(row.size()));
    }
    switch (method) {
    case ThresholdMethod::Mean: return threshold_mean(row);
    case ThresholdMethod::Median: return threshold_median(row);
    case ThresholdMethod::KMeansLog: return threshold_kmeans_log(row);
    }
    throw DataError("unreachable threshold method");
}

std::vector<double> thresholds(const ExpressionMatrix& m, ThresholdMethod method,
                               DiscretizeAxis axis) {
    std::vector<double> out;
    if (axis == DiscretizeAxis::PerGene) {
        out.resize(m.gene_count());
        for (std::size_t g = 0; g < m.gene_count(); ++g) {
            try {
                out[g] = threshold(m.row(g), method);
            } catch (const DegenerateRow& e) {
                throw DegenerateRow("gene '" + m.gene_ids()[g] + "': " + e.what());
            }
        }
    } else {
        out.resize(m.sample_count());
        std::vector<double> column(m.gene_count());
        for (std::size_t s = 0; s < m.sample_count(); ++s) {
            for (std::size_t g = 0; g < m.gene_count(); ++g) {
                column[g] = m(g, s);
            }
            try {
                out[s] = threshold(column, method);
            } catch (const DegenerateRow& e) {
                throw DegenerateRow("sample '" + m.sample_ids()[s] + "': " +
                                    e.what());
            }
        }
    }
    return out;
}

BinaryMatrix discretize(const ExpressionMatrix& m, ThresholdMethod method,
                        DiscretizeAxis axis, unsigned threads) {
    std::vector<double> cuts = thresholds(m, method, axis);
    std::vector<std::uint8_t> bits(m.gene_count() * m.sample_count());
    parallel_for(m.gene_count(), threads, [&](std::size_t g) {
        for (std::size_t s = 0; s < m.sample_count(); ++s) {
            double t = axis == DiscretizeAxis::PerGene ? cuts[g] : cuts[s];
            bits[g * m.sample_count() + s] = m(g, s) >= t ? 1 : 0;
        }
    });
    return BinaryMatrix(m.gene_ids(), m.sample_ids(), std::move(bits));
}

void serialize_binary_matrix(const BinaryMatrix& b, std::ostream& out) {
    out << "gene";
    for (const auto& s : b.sample_ids()) out << '\t' << s;
    out << '\n';
    for (std::size_t g = 0; g < b.gene_count(); ++g) {
        out << b.gene_ids()[g];
        for (std::size_t s = 0; s < b.sample_count(); ++s) {
            out << '\t' << int(b(g, s));
        }
        out << '\n';
    }
}

std::string serialize_binary_matrix(const BinaryMatrix& b) {
    std::ostringstream out;
    serialize_binary_matrix(b, out);
    return out.str();
}

BinaryMatrix parse_binary_matrix(std::istream& in) {
    ExpressionMatrix m = parse_expression_matrix(in);
    std::vector<std::uint8_t> bits(m.values().size());
    for (std::size_t i = 0; i < m.values().size(); ++i) {
        double v = m.values()[i];
        if (v != 0.0 && v != 1.0) {
            throw NonNumericValue("binary matrix entry must be 0 or 1, got " +
                                  std::to_string(v));
        }
        bits[i] = v == 1.0 ? 1 : 0;
    }
    return BinaryMatrix(m.gene_ids(), m.sample_ids(), std::move(bits));
}

BinaryMatrix parse_binary_matrix(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_binary_matrix(in);
}

} // namespace pbn
