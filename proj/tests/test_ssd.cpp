#include "pbn/ssd.hpp"
#include "pbn/errors.hpp"

#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

using pbn::gray_decode;
using pbn::gray_encode;
using pbn::State;
using pbn::StateHistogram;

TEST_CASE("gray decoding matches the reflected code table") {
    CHECK(pbn::gray_to_int(std::vector<std::uint8_t>{0, 0, 0}) == 0);
    CHECK(pbn::gray_to_int(std::vector<std::uint8_t>{0, 0, 1}) == 1);
    CHECK(pbn::gray_to_int(std::vector<std::uint8_t>{1, 0, 0}) == 7);
    CHECK(pbn::gray_to_int(std::vector<std::uint8_t>{0, 1, 1}) == 2);
}

TEST_CASE("gray encode and decode are inverse bijections up to 16 bits") {
    for (std::uint64_t v = 0; v < (1u << 16); ++v) {
        CHECK(gray_decode(gray_encode(v)) == v);
        CHECK(gray_encode(gray_decode(v)) == v);
    }
}

TEST_CASE("consecutive integers get codes one bit apart") {
    for (std::uint64_t v = 0; v + 1 < (1u << 16); ++v) {
        std::uint64_t diff = gray_encode(v) ^ gray_encode(v + 1);
        CHECK((diff & (diff - 1)) == 0);
        CHECK(diff != 0);
    }
}

TEST_CASE("histogram counts gray-decoded states") {
    std::vector<State> states{0, 0, 3}; // (0,0), (0,0), (1,1)
    auto h = pbn::histogram(states, 2);
    CHECK(h.total == 3);
    CHECK(h.counts.at(0) == 2);
    CHECK(h.counts.at(2) == 1); // gray 11 decodes to 2
    CHECK(h.counts.size() == 2);

    CHECK(pbn::histogram(std::vector<State>{}, 2).total == 0);

    std::vector<State> repeated(50, State{1});
    auto r = pbn::histogram(repeated, 3);
    CHECK(r.counts.size() == 1);
    CHECK(r.counts.at(1) == 50);

    CHECK_THROWS_AS(pbn::histogram(std::vector<State>{4}, 2),
                    pbn::LengthMismatch);
}

TEST_CASE("merging histograms adds counts and totals") {
    auto a = pbn::histogram(std::vector<State>{0, 1, 1}, 2);
    auto b = pbn::histogram(std::vector<State>{1, 2}, 2);
    pbn::merge_histogram(a, b);
    CHECK(a.total == 5);
    CHECK(a.counts.at(1) == 3);
}

TEST_CASE("KS statistic on known samples") {
    using V = std::vector<std::uint64_t>;
    CHECK(pbn::ks_statistic(V{1, 2, 3}, V{1, 2, 3}) == 0.0);
    CHECK(pbn::ks_statistic(V{0, 0}, V{7, 7}) == 1.0);
    CHECK(pbn::ks_statistic(V{0, 0, 1, 1}, V{0, 1, 1, 1}) ==
          doctest::Approx(0.25).epsilon(1e-15));
    // Symmetry.
    CHECK(pbn::ks_statistic(V{0, 1, 1, 1}, V{0, 0, 1, 1}) ==
          doctest::Approx(0.25).epsilon(1e-15));
    CHECK_THROWS_AS(pbn::ks_statistic(V{}, V{1}), pbn::TooFewSamples);
}

TEST_CASE("KS statistic is invariant under order-preserving relabeling") {
    std::mt19937_64 eng(19);
    for (int rep = 0; rep < 30; ++rep) {
        std::vector<std::uint64_t> a(40), b(60);
        for (auto& v : a) v = eng() % 10;
        for (auto& v : b) v = eng() % 10;
        double before = pbn::ks_statistic(a, b);
        auto relabel = [](std::uint64_t v) { return v * v + 3; }; // monotone
        for (auto& v : a) v = relabel(v);
        for (auto& v : b) v = relabel(v);
        CHECK(pbn::ks_statistic(a, b) == doctest::Approx(before).epsilon(1e-15));
    }
}

TEST_CASE("critical value follows the asymptotic formula") {
    // c(0.05) = sqrt(-ln(0.025)/2)
    double c = std::sqrt(-0.5 * std::log(0.025));
    CHECK(pbn::ks_critical(0.05, 50000, 50000) ==
          doctest::Approx(c * std::sqrt(2.0 / 50000.0)).epsilon(1e-15));
    CHECK(c == doctest::Approx(1.3581015157406195).epsilon(1e-15));
    CHECK_THROWS_AS(pbn::ks_critical(0.0, 10, 10), pbn::DataError);
    CHECK_THROWS_AS(pbn::ks_critical(1.0, 10, 10), pbn::DataError);
}

TEST_CASE("two-half test splits, subsamples, and compares") {
    // First half all zeros, second half all threes: D must be 1.
    std::vector<State> split(100, State{0});
    for (std::size_t i = 50; i < 100; ++i) split[i] = 3;
    auto report = pbn::ks_two_half_test(split, 10, 0.05);
    CHECK(report.n1 == 5);
    CHECK(report.n2 == 5);
    CHECK(report.statistic == 1.0);
    CHECK(!report.converged);

    // Identical halves converge trivially.
    std::vector<State> same;
    for (int half = 0; half < 2; ++half) {
        for (int i = 0; i < 50; ++i) same.push_back(State(i % 4));
    }
    auto ok = pbn::ks_two_half_test(same, 1, 0.05);
    CHECK(ok.statistic == 0.0);
    CHECK(ok.converged);

    CHECK_THROWS_AS(pbn::ks_two_half_test(std::vector<State>(7, State{0}), 1, 0.05),
                    pbn::OddRecordLength);
    CHECK_THROWS_AS(pbn::ks_two_half_test(std::vector<State>(8, State{0}), 9, 0.05),
                    pbn::TooFewSamples);
    CHECK_THROWS_AS(pbn::ks_two_half_test(same, 0, 0.05), pbn::DataError);
}

TEST_CASE("subsampling keeps indices 0, G, 2G within each half") {
    // Build halves whose kept entries differ from the skipped ones: the kept
    // positions carry value 5, everything else value 0.
    std::vector<State> states(40, State{0});
    for (std::size_t i = 0; i < 20; i += 4) states[i] = 5;
    for (std::size_t i = 20; i < 40; i += 4) states[i] = 5;
    auto report = pbn::ks_two_half_test(states, 4, 0.05);
    CHECK(report.n1 == 5);
    CHECK(report.n2 == 5);
    // Every kept entry decodes gray 5 -> 6 on both sides, so D = 0.
    CHECK(report.statistic == 0.0);
}

TEST_CASE("histogram emission lists occupied states with probabilities") {
    StateHistogram h;
    h.counts[0] = 2;
    h.counts[2] = 1;
    h.total = 3;
    std::string text = pbn::emit_histogram(h);
    CHECK(text ==
          "state,count,probability\n0,2,0.6666666666666666\n2,1,"
          "0.3333333333333333\n");

    StateHistogram single;
    single.counts[5] = 4;
    single.total = 4;
    CHECK(pbn::emit_histogram(single) == "state,count,probability\n5,4,1\n");

    StateHistogram empty;
    CHECK_THROWS_AS(pbn::emit_histogram(empty), pbn::EmptyHistogram);
}

TEST_CASE("histogram text parses back to the same counts") {
    StateHistogram h;
    h.counts[1] = 7;
    h.counts[9] = 3;
    h.total = 10;
    std::istringstream in("# n=4 T=0 N=10 G=1 seed=1\n" + pbn::emit_histogram(h));
    auto round = pbn::parse_histogram(in);
    CHECK(round == h);

    std::istringstream junk("state,count,probability\nx,1,0.5\n");
    CHECK_THROWS_AS(pbn::parse_histogram(junk), pbn::NonNumericValue);
}

TEST_CASE("trajectories round-trip with their header") {
    std::vector<State> states{1, 2, 3, 0, 1};
    std::ostringstream out;
    pbn::write_trajectory(states, 2, 777, 42, out);
    std::istringstream in(out.str());
    auto t = pbn::read_trajectory(in);
    CHECK(t.n == 2);
    CHECK(t.burn_in == 777);
    CHECK(t.seed == 42);
    CHECK(t.states == states);

    std::istringstream missing("1\n2\n");
    CHECK_THROWS_AS(pbn::read_trajectory(missing), pbn::MalformedRow);
    std::istringstream oversized("# n=1\n5\n");
    CHECK_THROWS_AS(pbn::read_trajectory(oversized), pbn::LengthMismatch);
}
