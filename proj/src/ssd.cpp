#include "pbn/ssd.hpp"

#include "pbn/errors.hpp"
#include "pbn/format.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace pbn {

std::uint64_t gray_to_int(std::span<const std::uint8_t> bits) {
    return gray_decode(state_from_bits(bits));
}

StateHistogram histogram(std::span<const State> states, std::size_t n) {
    if (n > 64) {
        throw NetworkTooLarge("histogram supports at most 64 genes, got " +
                              std::to_string(n));
    }
    StateHistogram h;
    for (State s : states) {
        if (n < 64 && (s >> n) != 0) {
            throw LengthMismatch("state " + std::to_string(s) +
                                 " does not fit in " + std::to_string(n) +
                                 " genes");
        }
        ++h.counts[gray_decode(s)];
    }
    h.total = states.size();
    return h;
}

void merge_histogram(StateHistogram& into, const StateHistogram& from) {
    for (const auto& [key, count] : from.counts) {
        into.counts[key] += count;
    }
    into.total += from.total;
}

double ks_statistic(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b) {
    if (a.empty() || b.empty()) {
        throw TooFewSamples("KS statistic needs non-empty samples");
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        std::uint64_t v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == v) ++i;
        while (j < b.size() && b[j] == v) ++j;
        d = std::max(d, std::abs(double(i) / na - double(j) / nb));
    }
    // Once one sample is exhausted its CDF stays at 1 and the gap can only
    // shrink from here, so the sweep may stop.
    return d;
}

double ks_critical(double alpha, std::size_t n1, std::size_t n2) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw DataError("significance level must lie in (0, 1), got " +
                        std::to_string(alpha));
    }
    if (n1 == 0 || n2 == 0) {
        throw TooFewSamples("KS critical value needs non-empty samples");
    }
    double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
    double f1 = static_cast<double>(n1);
    double f2 = static_cast<double>(n2);
    return c * std::sqrt((f1 + f2) / (f1 * f2));
}

KsReport ks_two_half_test(std::span<const State> states, std::size_t subsample,
                          double alpha) {
    const std::size_t N = states.size();
    if (N % 2 != 0) {
        throw OddRecordLength("trajectory length must be even, got " +
                              std::to_string(N));
    }
    if (subsample < 1) {
        throw DataError("subsample interval must be at least 1");
    }
    const std::size_t half = N / 2;
    if (half / subsample < 1) {
        throw TooFewSamples("trajectory of " + std::to_string(N) +
                            " states is too short for subsample interval " +
                            std::to_string(subsample));
    }
    std::vector<std::uint64_t> first, second;
    for (std::size_t i = 0; i < half; i += subsample) {
        first.push_back(gray_decode(states[i]));
        second.push_back(gray_decode(states[half + i]));
    }
    KsReport report;
    report.n1 = first.size();
    report.n2 = second.size();
    report.alpha = alpha;
    report.statistic = ks_statistic(std::move(first), std::move(second));
    report.critical = ks_critical(alpha, report.n1, report.n2);
    report.converged = report.statistic < report.critical;
    return report;
}

void emit_histogram(const StateHistogram& h, std::ostream& out) {
    if (h.total == 0) {
        throw EmptyHistogram("histogram has no recorded states");
    }
    out << "state,count,probability\n";
    const double total = static_cast<double>(h.total);
    for (const auto& [key, count] : h.counts) {
        out << key << ',' << count << ','
            << format_double(static_cast<double>(count) / total) << '\n';
    }
}

std::string emit_histogram(const StateHistogram& h) {
    std::ostringstream out;
    emit_histogram(h, out);
    return out.str();
}

StateHistogram parse_histogram(std::istream& in) {
    StateHistogram h;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#' || line.rfind("state,", 0) == 0) {
            continue;
        }
        std::size_t c1 = line.find(',');
        std::size_t c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos) {
            throw MalformedRow("histogram row '" + line +
                               "' is not state,count,probability");
        }
        std::uint64_t key = 0, count = 0;
        auto r1 = std::from_chars(line.data(), line.data() + c1, key);
        auto r2 = std::from_chars(line.data() + c1 + 1, line.data() + c2, count);
        if (r1.ec != std::errc() || r1.ptr != line.data() + c1 ||
            r2.ec != std::errc() || r2.ptr != line.data() + c2) {
            throw NonNumericValue("histogram row '" + line +
                                  "' has non-integer state or count");
        }
        h.counts[key] += count;
        h.total += count;
    }
    if (h.total == 0) {
        throw EmptyHistogram("histogram input has no rows");
    }
    return h;
}

void write_ks_report(const KsReport& report, std::ostream& out) {
    out << "D=" << format_double(report.statistic) << '\n'
        << "n1=" << report.n1 << '\n'
        << "n2=" << report.n2 << '\n'
        << "critical=" << format_double(report.critical) << '\n'
        << "converged=" << (report.converged ? "true" : "false") << '\n';
}

void write_trajectory(std::span<const State> states, std::size_t n,
                      std::uint64_t burn_in, std::uint64_t seed,
                      std::ostream& out) {
    out << "# n=" << n << " T=" << burn_in << " seed=" << seed << '\n';
    for (State s : states) {
        out << s << '\n';
    }
}

namespace {

// Reads "key=<integer>" out of a comment line; leaves `value` alone if absent.
template <typename T>
bool scan_header_field(const std::string& line, std::string_view key, T& value) {
    std::size_t pos = line.find(std::string(key) + "=");
    if (pos == std::string::npos) return false;
    if (pos > 0 && line[pos - 1] != ' ' && line[pos - 1] != '#') return false;
    const char* first = line.data() + pos + key.size() + 1;
    auto r = std::from_chars(first, line.data() + line.size(), value);
    return r.ec == std::errc();
}

} // namespace

Trajectory read_trajectory(std::istream& in) {
    Trajectory t;
    std::string line;
    bool have_n = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            have_n = scan_header_field(line, "n", t.n) || have_n;
            scan_header_field(line, "T", t.burn_in);
            scan_header_field(line, "seed", t.seed);
            continue;
        }
        State s = 0;
        auto r = std::from_chars(line.data(), line.data() + line.size(), s);
        if (r.ec != std::errc() || r.ptr != line.data() + line.size()) {
            throw NonNumericValue("trajectory line '" + line +
                                  "' is not a state integer");
        }
        t.states.push_back(s);
    }
    if (!have_n) {
        throw MalformedRow("trajectory input lacks its '# n=' header");
    }
    if (t.states.empty()) {
        throw EmptyInput("trajectory input has no states");
    }
    for (State s : t.states) {
        if (t.n < 64 && (s >> t.n) != 0) {
            throw LengthMismatch("trajectory state " + std::to_string(s) +
                                 " does not fit in " + std::to_string(t.n) +
                                 " genes");
        }
    }
    return t;
}

} // namespace pbn
