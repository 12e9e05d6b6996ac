// Reproducible experiment orchestration: per-trial seeded runs, Wilson-scored
// aggregation, CSV/JSON persistence, and manifest-driven replay.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace uag {

struct WilsonInterval {
    double lo = 0;
    double hi = 1;
};
// Two-sided 95% score interval by default.
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                               double z = 1.959963984540054);

struct SummaryStats {
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double frequency = 0;
    WilsonInterval interval;
    double wallclock_ms = 0;  // measurement only; never part of records.csv
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::string to_string() const;
};

struct ExperimentConfig {
    std::string task;  // generate | coupling-verify | expansion-check |
                       // solve-thresholds | matching-exp | hamilton-exp
    int n = 0;
    int k = 0;
    std::vector<int> stages;  // hamilton-exp
    int trials = 1;
    std::uint64_t seed = 0;
    std::string mode;  // matching-exp: incremental|two-stage; expansion-check: exact|sampled
    int k1 = 0, k2 = 0;            // two-stage split
    double alpha = 0, beta = 0;    // expansion-check
    std::uint64_t sample_trials = 100000;  // expansion-check sampled mode
    int m = 0;                     // coupling-verify
    int subset_size = 0;           // coupling-verify; 0 = all sizes
    double tol = 1e-12;            // solve-thresholds
    int k_min = 0, k_max = 0;      // solve-thresholds / sweeps
    std::string which = "both";    // solve-thresholds: alpha1|alpha2|both
    int threads = 0;               // 0 = hardware concurrency
    std::string out_dir;           // empty = no files written
    std::string format = "csv";    // csv|json for stdout-facing tools
    std::string emit_certificates;  // hamilton-exp: path for certificate lines

    std::string to_json() const;
    static ExperimentConfig from_json(const std::string& text);
    bool operator==(const ExperimentConfig&) const = default;
};

struct RunResult {
    ExperimentConfig config;
    SummaryStats summary;
    CsvTable records;
    std::string summary_json;
    std::string manifest_json;
    // Task-specific files (certificate.json, sequence.txt, ...), also written
    // under out_dir when set.
    std::vector<std::pair<std::string, std::string>> artifacts;
};

// Executes config.trials trials keyed by RngSpec(seed, trial); when out_dir is
// set, writes records.csv, summary.json and manifest.json (the manifest alone
// suffices to replay the run byte-identically).
RunResult run(const ExperimentConfig& config);

struct SweepPoint {
    int axis = 0;
    SummaryStats summary;
};
struct SweepResult {
    std::vector<SweepPoint> points;
    CsvTable table;  // records of all points with a leading axis column
};
// Re-runs `base` for each k in k_values (matching-exp and hamilton-exp).
SweepResult sweep(const ExperimentConfig& base, const std::vector<int>& k_values);

RunResult replay_manifest(const std::string& manifest_path);

std::string build_id();

}  // namespace uag
