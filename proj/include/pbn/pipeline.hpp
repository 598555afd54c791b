#pragma once

#include "pbn/discretize.hpp"
#include "pbn/ssd.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace pbn {

// Every knob of the end-to-end run. A run writes these back out as a
// manifest, and feeding the manifest back in reproduces the run exactly.
struct PipelineConfig {
    std::string input;
    std::vector<std::string> genes;   // empty means all genes
    ThresholdMethod method = ThresholdMethod::Median;
    std::size_t k = 3;
    std::size_t n_predictors = 10;
    double perturbation = 0.001;
    std::uint64_t burn_in = 10000;    // T
    std::uint64_t samples = 40000;    // N, recorded states per chain
    std::size_t subsample = 10;       // G
    std::size_t repeats = 1;          // R, independent chains
    double alpha = 0.05;
    std::uint64_t seed = 1;
    std::string out_dir = ".";
    unsigned threads = 1;
};

struct PipelineResult {
    std::string binary_path;
    std::string network_path;
    std::string histogram_path;
    std::string ks_path;
    std::string manifest_path;
    std::vector<KsReport> ks; // one per chain
};

// discretize -> infer -> simulate R seeded chains -> pooled histogram and
// per-chain convergence reports, all written under cfg.out_dir.
PipelineResult run_pipeline(const PipelineConfig& cfg);

// Rejects impossible parameter combinations before any file is touched.
void validate_config(const PipelineConfig& cfg);

// Flat key=value document (same keys as the command-line flags).
void write_manifest(const PipelineConfig& cfg, std::ostream& out);
std::vector<std::pair<std::string, std::string>> parse_key_values(std::istream& in);

// "a,b,c" stays a list; "@file" or an existing path reads one id per line.
std::vector<std::string> parse_gene_list(const std::string& arg);

} // namespace pbn
