#include "pbn/pipeline.hpp"
#include "pbn/discretize.hpp"
#include "pbn/errors.hpp"
#include "pbn/pbn.hpp"
#include "pbn/ssd.hpp"

#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() /
               ("pbnkit_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Four genes driven by the two low bits of the sample index, with the
// last two genes wired to the first two. Twelve clearly separated samples.
fs::path write_demo_tsv(const fs::path& dir) {
    fs::path file = dir / "demo.tsv";
    std::ofstream out(file, std::ios::binary);
    out << "id";
    for (int j = 0; j < 12; ++j) out << "\tS" << j;
    out << '\n';
    auto bit = [](int j, int which) {
        int a = j & 1, b = (j >> 1) & 1;
        switch (which) {
            case 0: return a;
            case 1: return b;
            case 2: return 1 - a;
            default: return a & b;
        }
    };
    for (int g = 0; g < 4; ++g) {
        out << 'g' << g;
        for (int j = 0; j < 12; ++j) {
            double v = bit(j, g) ? 5.0 + 0.01 * j : 1.0 + 0.01 * j;
            out << '\t' << v;
        }
        out << '\n';
    }
    return file;
}

pbn::PipelineConfig demo_config(const fs::path& dir, const fs::path& input) {
    pbn::PipelineConfig cfg;
    cfg.input = input.string();
    cfg.method = pbn::ThresholdMethod::Mean;
    cfg.k = 2;
    cfg.n_predictors = 4;
    cfg.perturbation = 0.01;
    cfg.burn_in = 200;
    cfg.samples = 2000;
    cfg.subsample = 5;
    cfg.alpha = 0.05;
    cfg.seed = 7;
    cfg.out_dir = (dir / "out").string();
    return cfg;
}

} // namespace

TEST_CASE("pipeline writes all five artifacts and they parse back") {
    TempDir tmp("pipe_artifacts");
    auto cfg = demo_config(tmp.path, write_demo_tsv(tmp.path));
    auto result = pbn::run_pipeline(cfg);

    CHECK(fs::exists(result.binary_path));
    CHECK(fs::exists(result.network_path));
    CHECK(fs::exists(result.histogram_path));
    CHECK(fs::exists(result.ks_path));
    CHECK(fs::exists(result.manifest_path));
    REQUIRE(result.ks.size() == 1);
    CHECK(result.ks[0].n1 == 200);
    CHECK(result.ks[0].n2 == 200);

    std::ifstream bin(result.binary_path, std::ios::binary);
    auto binary = pbn::parse_binary_matrix(bin);
    CHECK(binary.gene_ids() ==
          std::vector<std::string>{"g0", "g1", "g2", "g3"});
    CHECK(binary.sample_count() == 12);
    // Mean thresholds recover the planted bits exactly.
    for (std::size_t g = 0; g < 4; ++g) {
        for (std::size_t j = 0; j < 12; ++j) {
            int a = int(j) & 1, b = (int(j) >> 1) & 1;
            int planted = g == 0 ? a : g == 1 ? b : g == 2 ? 1 - a : (a & b);
            CHECK(int(binary(g, j)) == planted);
        }
    }

    std::ifstream netin(result.network_path, std::ios::binary);
    auto net = pbn::parse_pbn(netin);
    CHECK(net.n() == 4);
    CHECK(net.perturbation() == 0.01);

    std::ifstream histin(result.histogram_path, std::ios::binary);
    auto hist = pbn::parse_histogram(histin);
    CHECK(hist.total == 2000);

    std::string ks_text = slurp(result.ks_path);
    CHECK(ks_text.find("D=") == 0);
    CHECK(ks_text.find("chain=") == std::string::npos);
    CHECK(ks_text.find("converged=") != std::string::npos);
}

TEST_CASE("rerunning the pipeline reproduces every byte") {
    TempDir tmp("pipe_rerun");
    auto input = write_demo_tsv(tmp.path);

    auto cfg1 = demo_config(tmp.path, input);
    cfg1.out_dir = (tmp.path / "run1").string();
    auto cfg2 = cfg1;
    cfg2.out_dir = (tmp.path / "run2").string();

    auto r1 = pbn::run_pipeline(cfg1);
    auto r2 = pbn::run_pipeline(cfg2);

    CHECK(slurp(r1.binary_path) == slurp(r2.binary_path));
    CHECK(slurp(r1.network_path) == slurp(r2.network_path));
    CHECK(slurp(r1.histogram_path) == slurp(r2.histogram_path));
    CHECK(slurp(r1.ks_path) == slurp(r2.ks_path));
    // Manifests differ only in the out directory.
    std::istringstream m1(slurp(r1.manifest_path)), m2(slurp(r2.manifest_path));
    auto kv1 = pbn::parse_key_values(m1);
    auto kv2 = pbn::parse_key_values(m2);
    REQUIRE(kv1.size() == kv2.size());
    for (std::size_t i = 0; i < kv1.size(); ++i) {
        CHECK(kv1[i].first == kv2[i].first);
        if (kv1[i].first != "out") CHECK(kv1[i].second == kv2[i].second);
    }
}

TEST_CASE("thread count does not change any artifact") {
    TempDir tmp("pipe_threads");
    auto input = write_demo_tsv(tmp.path);

    auto serial = demo_config(tmp.path, input);
    serial.out_dir = (tmp.path / "serial").string();
    serial.threads = 1;
    auto parallel = demo_config(tmp.path, input);
    parallel.out_dir = (tmp.path / "parallel").string();
    parallel.threads = 3;

    auto r1 = pbn::run_pipeline(serial);
    auto r2 = pbn::run_pipeline(parallel);
    CHECK(slurp(r1.binary_path) == slurp(r2.binary_path));
    CHECK(slurp(r1.network_path) == slurp(r2.network_path));
    CHECK(slurp(r1.histogram_path) == slurp(r2.histogram_path));
    CHECK(slurp(r1.ks_path) == slurp(r2.ks_path));
}

TEST_CASE("multiple chains pool the histogram and report each chain") {
    TempDir tmp("pipe_chains");
    auto cfg = demo_config(tmp.path, write_demo_tsv(tmp.path));
    cfg.repeats = 3;
    auto result = pbn::run_pipeline(cfg);
    REQUIRE(result.ks.size() == 3);

    std::ifstream histin(result.histogram_path, std::ios::binary);
    CHECK(pbn::parse_histogram(histin).total == 3 * 2000);

    std::string ks_text = slurp(result.ks_path);
    CHECK(ks_text.find("chain=0\n") != std::string::npos);
    CHECK(ks_text.find("chain=1\n") != std::string::npos);
    CHECK(ks_text.find("chain=2\n") != std::string::npos);

    // Different seeds give different chains: at least one KS statistic pair
    // should differ.
    bool all_same = result.ks[0].statistic == result.ks[1].statistic &&
                    result.ks[1].statistic == result.ks[2].statistic;
    CHECK(!all_same);
}

TEST_CASE("gene selection restricts the run to the named rows") {
    TempDir tmp("pipe_select");
    auto cfg = demo_config(tmp.path, write_demo_tsv(tmp.path));
    cfg.genes = {"g3", "g0", "g1"};
    auto result = pbn::run_pipeline(cfg);
    std::ifstream bin(result.binary_path, std::ios::binary);
    auto binary = pbn::parse_binary_matrix(bin);
    CHECK(binary.gene_ids() == std::vector<std::string>{"g3", "g0", "g1"});

    std::ifstream netin(result.network_path, std::ios::binary);
    CHECK(pbn::parse_pbn(netin).n() == 3);
}

TEST_CASE("config validation rejects impossible parameters") {
    TempDir tmp("pipe_validate");
    auto cfg = demo_config(tmp.path, write_demo_tsv(tmp.path));
    pbn::validate_config(cfg); // baseline passes

    auto bad = cfg;
    bad.input.clear();
    CHECK_THROWS_AS(pbn::validate_config(bad), pbn::DataError);
    bad = cfg;
    bad.k = 0;
    CHECK_THROWS_AS(pbn::validate_config(bad), pbn::DataError);
    bad = cfg;
    bad.n_predictors = 0;
    CHECK_THROWS_AS(pbn::validate_config(bad), pbn::DataError);
    bad = cfg;
    bad.perturbation = 0.0;
    CHECK_THROWS_AS(pbn::validate_config(bad), pbn::DataError);
    bad = cfg;
    bad.perturbation = 0.5;
    CHECK_THROWS_AS(pbn::validate_config(bad), pbn::DataError);
    bad = cfg;
    bad.samples = 2001;
    CHECK_THROWS_AS(pbn::validate_config(bad), pbn::OddRecordLength);
    bad = cfg;
    bad.samples = 0;
    CHECK_THROWS_AS(pbn::validate_config(bad), pbn::TooFewSamples);
    bad = cfg;
    bad.subsample = 0;
    CHECK_THROWS_AS(pbn::validate_config(bad), pbn::DataError);
    bad = cfg;
    bad.samples = 10;
    bad.subsample = 6;
    CHECK_THROWS_AS(pbn::validate_config(bad), pbn::TooFewSamples);
    bad = cfg;
    bad.repeats = 0;
    CHECK_THROWS_AS(pbn::validate_config(bad), pbn::DataError);
    bad = cfg;
    bad.alpha = 0.0;
    CHECK_THROWS_AS(pbn::validate_config(bad), pbn::DataError);
    bad = cfg;
    bad.alpha = 1.0;
    CHECK_THROWS_AS(pbn::validate_config(bad), pbn::DataError);

    bad = cfg;
    bad.input = (tmp.path / "nope.tsv").string();
    CHECK_THROWS_AS(pbn::run_pipeline(bad), pbn::DataError);
}

TEST_CASE("manifest lists every knob in a fixed order") {
    pbn::PipelineConfig cfg;
    cfg.input = "matrix.tsv";
    cfg.genes = {"a", "b"};
    std::ostringstream out;
    pbn::write_manifest(cfg, out);
    std::istringstream in(out.str());
    auto pairs = pbn::parse_key_values(in);
    std::vector<std::string> keys;
    for (const auto& [k, v] : pairs) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{
                      "input", "genes", "method", "k", "n-predictors",
                      "perturbation", "burn-in", "samples", "subsample",
                      "repeats", "alpha", "seed", "out", "threads"});
    CHECK(pairs[0].second == "matrix.tsv");
    CHECK(pairs[1].second == "a,b");
    CHECK(pairs[2].second == "median");
    CHECK(pairs[3].second == "3");
    CHECK(pairs[5].second == "0.001");
    CHECK(pairs[10].second == "0.05");
}

TEST_CASE("key=value parsing trims, skips comments, rejects junk") {
    std::istringstream in(
        "# a comment\n"
        "\n"
        "  k = 3 \n"
        "input=path with spaces.tsv\r\n"
        "genes=\n");
    auto pairs = pbn::parse_key_values(in);
    REQUIRE(pairs.size() == 3);
    CHECK(pairs[0] == std::pair<std::string, std::string>{"k", "3"});
    CHECK(pairs[1] ==
          std::pair<std::string, std::string>{"input", "path with spaces.tsv"});
    CHECK(pairs[2] == std::pair<std::string, std::string>{"genes", ""});

    std::istringstream junk("not a pair\n");
    CHECK_THROWS_AS(pbn::parse_key_values(junk), pbn::MalformedRow);
}

TEST_CASE("gene lists come from commas, @files, or bare paths") {
    CHECK(pbn::parse_gene_list("") == std::vector<std::string>{});
    CHECK(pbn::parse_gene_list("a,b,c") ==
          std::vector<std::string>{"a", "b", "c"});
    CHECK(pbn::parse_gene_list(" a , b ") ==
          std::vector<std::string>{"a", "b"});
    CHECK(pbn::parse_gene_list("solo") == std::vector<std::string>{"solo"});

    TempDir tmp("pipe_genes");
    fs::path list = tmp.path / "genes.txt";
    {
        std::ofstream out(list, std::ios::binary);
        out << "x\n\n  y \nz\n";
    }
    std::vector<std::string> expect{"x", "y", "z"};
    CHECK(pbn::parse_gene_list("@" + list.string()) == expect);
    CHECK(pbn::parse_gene_list(list.string()) == expect);
    CHECK_THROWS_AS(pbn::parse_gene_list("@" + (tmp.path / "no.txt").string()),
                    pbn::DataError);
}

#ifdef PBNKIT_FIXTURE_DIR
TEST_CASE("pipeline handles the bundled seven-gene fixture") {
    TempDir tmp("pipe_fixture");
    pbn::PipelineConfig cfg;
    cfg.input = std::string(PBNKIT_FIXTURE_DIR) + "/synthetic7.tsv";
    cfg.method = pbn::ThresholdMethod::Mean;
    cfg.k = 2;
    cfg.n_predictors = 5;
    cfg.perturbation = 0.01;
    cfg.burn_in = 1000;
    cfg.samples = 20000;
    cfg.subsample = 10;
    cfg.seed = 3;
    cfg.out_dir = (tmp.path / "out").string();
    auto result = pbn::run_pipeline(cfg);

    std::ifstream netin(result.network_path, std::ios::binary);
    auto net = pbn::parse_pbn(netin);
    CHECK(net.n() == 7);
    // G1/G4 and G2/G6 are planted complements, so those four genes admit a
    // perfect linear predictor; their top entries must score exactly 1.
    for (std::size_t g : {0u, 1u, 3u, 5u}) {
        REQUIRE(!net.functions()[g].empty());
        CHECK(net.functions()[g].front().cod ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
    for (const auto& fns : net.functions()) {
        REQUIRE(!fns.empty());
        CHECK(fns.front().cod > 0.0);
    }

    std::ifstream histin(result.histogram_path, std::ios::binary);
    CHECK(pbn::parse_histogram(histin).total == 20000);
}
#endif
