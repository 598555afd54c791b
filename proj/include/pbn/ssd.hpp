#pragma once

#include "pbn/pbn.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace pbn {

// Reflected binary Gray code on plain integers.
constexpr std::uint64_t gray_encode(std::uint64_t value) {
    return value ^ (value >> 1);
}

constexpr std::uint64_t gray_decode(std::uint64_t code) {
    code ^= code >> 32;
    code ^= code >> 16;
    code ^= code >> 8;
    code ^= code >> 4;
    code ^= code >> 2;
    code ^= code >> 1;
    return code;
}

// A packed State is the Gray codeword itself (gene 0 = most significant bit);
// this is the integer the histogram is keyed by.
std::uint64_t gray_to_int(std::span<const std::uint8_t> bits);
inline std::uint64_t gray_to_int(State s) { return gray_decode(s); }

struct StateHistogram {
    std::map<std::uint64_t, std::uint64_t> counts; // gray integer -> visits
    std::uint64_t total = 0;

    bool operator==(const StateHistogram& other) const = default;
};

StateHistogram histogram(std::span<const State> states, std::size_t n);
void merge_histogram(StateHistogram& into, const StateHistogram& from);

struct KsReport {
    double statistic;   // max vertical CDF gap D
    std::size_t n1;
    std::size_t n2;
    double alpha;
    double critical;    // c(alpha) * sqrt((n1+n2)/(n1*n2))
    bool converged;     // D < critical
};

// Two-sample KS statistic over integer samples (order irrelevant).
double ks_statistic(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b);
double ks_critical(double alpha, std::size_t n1, std::size_t n2);

// Splits the trajectory into halves [0, N/2) and [N/2, N), keeps every G-th
// gray integer of each half, and compares the two empirical CDFs.
KsReport ks_two_half_test(std::span<const State> states, std::size_t subsample,
                          double alpha);

// Comma-separated rows "state,count,probability" sorted by state.
void emit_histogram(const StateHistogram& h, std::ostream& out);
std::string emit_histogram(const StateHistogram& h);
// Reads rows back, skipping '#' comments and the column header.
StateHistogram parse_histogram(std::istream& in);

void write_ks_report(const KsReport& report, std::ostream& out);

// Trajectory file: "# n=<genes> T=<burn-in> seed=<seed>" then one packed
// state integer per line.
void write_trajectory(std::span<const State> states, std::size_t n,
                      std::uint64_t burn_in, std::uint64_t seed,
                      std::ostream& out);
struct Trajectory {
    std::size_t n = 0;
    std::uint64_t burn_in = 0;
    std::uint64_t seed = 0;
    std::vector<State> states;
};
Trajectory read_trajectory(std::istream& in);

} // namespace pbn
