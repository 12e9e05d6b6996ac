#include "uag/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "uag/coupling.hpp"
#include "uag/expansion.hpp"
#include "uag/graph.hpp"
#include "uag/hamilton.hpp"
#include "uag/matching.hpp"
#include "uag/thresholds.hpp"

#ifndef UAG_BUILD_ID
#define UAG_BUILD_ID "unversioned"
#endif

namespace uag {

namespace {

using nlohmann::json;

std::string fmt(double v, const char* spec = "%.6f") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string join(const std::vector<int>& xs, char sep = ';') {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(xs[i]);
    }
    return out;
}

// Deterministic parallel map over trial indices: results land in preassigned
// slots, so the output is independent of scheduling.
template <typename Fn>
void for_each_trial(int trials, int threads, Fn&& fn) {
    if (threads <= 1 || trials <= 1) {
        for (int t = 0; t < trials; ++t) fn(t);
        return;
    }
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            int t = next.fetch_add(1);
            if (t >= trials) return;
            fn(t);
        }
    };
    std::vector<std::thread> pool;
    const int count = std::min(threads, trials);
    pool.reserve(count);
    for (int i = 0; i < count; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

struct TaskOutput {
    CsvTable records;
    std::uint64_t successes = 0;
    std::uint64_t trials = 0;
    std::vector<std::string> certificate_lines;  // hamilton-exp only
    std::vector<std::pair<std::string, std::string>> artifacts;  // extra files
};

std::vector<int> hamilton_stages(const ExperimentConfig& cfg) {
    if (!cfg.stages.empty()) return cfg.stages;
    if (cfg.k >= 5) return {cfg.k - 3, 1, 1, 1};
    if (cfg.k >= 1) return {cfg.k};
    throw std::invalid_argument("hamilton-exp: provide --stages or --k");
}

TaskOutput run_matching(const ExperimentConfig& cfg, int threads) {
    const bool two_stage = cfg.mode == "two-stage";
    if (!two_stage && cfg.mode != "incremental" && !cfg.mode.empty())
        throw std::invalid_argument("matching-exp: mode must be incremental or two-stage");
    const int k1 = two_stage ? (cfg.k1 ? cfg.k1 : cfg.k - 1) : cfg.k;
    const int k2 = two_stage ? (cfg.k2 ? cfg.k2 : 1) : 0;
    if (cfg.n < 1 || k1 < 1 || (two_stage && k2 < 1))
        throw std::invalid_argument("matching-exp: invalid n/k split");

    TaskOutput out;
    out.trials = cfg.trials;
    out.records.header = {"trial", "n", "k", "final_kappa", "steps", "success"};
    out.records.rows.resize(cfg.trials);
    std::atomic<std::uint64_t> successes{0};
    for_each_trial(cfg.trials, threads, [&](int t) {
        const RngSpec spec{cfg.seed, static_cast<std::uint64_t>(t) * 2};
        MatchingTrajectory traj = run_incremental_process(cfg.n, k1, spec);
        int kappa = traj.kappa[cfg.n];
        int steps = cfg.n - 1;
        if (two_stage) {
            const RngSpec spec2{cfg.seed, static_cast<std::uint64_t>(t) * 2 + 1};
            AugmentationResult aug =
                augment_with_fresh_choices(traj.final_graph, k2, spec2);
            kappa = cfg.n - 2 * aug.matching.size();
            steps += static_cast<int>(aug.steps.size());
        }
        const bool success = kappa <= 1;
        if (success) successes.fetch_add(1);
        out.records.rows[t] = {std::to_string(t), std::to_string(cfg.n),
                               std::to_string(k1 + k2), std::to_string(kappa),
                               std::to_string(steps), success ? "1" : "0"};
    });
    out.successes = successes.load();
    return out;
}

TaskOutput run_hamilton(const ExperimentConfig& cfg, int threads) {
    const std::vector<int> stages = hamilton_stages(cfg);
    if (cfg.n < 1) throw std::invalid_argument("hamilton-exp: n must be >= 1");
    TaskOutput out;
    out.trials = cfg.trials;
    out.records.header = {"trial", "n", "stages", "success", "final_path_len",
                          "stage_path_lens"};
    out.records.rows.resize(cfg.trials);
    std::vector<std::string> certs(cfg.trials);
    std::atomic<std::uint64_t> successes{0};
    for_each_trial(cfg.trials, threads, [&](int t) {
        StagedHamiltonResult res =
            staged_hamilton(cfg.n, stages, RngSpec{cfg.seed, static_cast<std::uint64_t>(t)});
        const bool success = res.certificate.has_value();
        if (success) {
            successes.fetch_add(1);
            certs[t] = join(res.certificate->cycle, ' ');
        }
        const int final_len =
            success ? cfg.n : res.stage_path_lengths.back();
        out.records.rows[t] = {std::to_string(t),
                               std::to_string(cfg.n),
                               join(stages),
                               success ? "1" : "0",
                               std::to_string(final_len),
                               join(res.stage_path_lengths)};
    });
    out.successes = successes.load();
    for (auto& line : certs)
        if (!line.empty()) out.certificate_lines.push_back(std::move(line));
    return out;
}

TaskOutput run_expansion(const ExperimentConfig& cfg) {
    if (cfg.n < 1 || cfg.k < 1)
        throw std::invalid_argument("expansion-check: n and k must be >= 1");
    UagGraph g = build_graph(sample_choice_sequence(cfg.n, cfg.k, RngSpec{cfg.seed, 0}));
    ExpanderCertificate cert =
        cfg.mode == "sampled"
            ? is_expander_sampled(g, cfg.alpha, cfg.beta, cfg.sample_trials,
                                  RngSpec{cfg.seed, 1})
            : is_expander_exact(g, cfg.alpha, cfg.beta);
    TaskOutput out;
    out.trials = 1;
    out.successes = cert.pass ? 1 : 0;
    out.records.header = {"n", "k",      "alpha",  "beta",
                          "mode", "verdict", "witness", "subsets_checked"};
    std::string witness;
    if (cert.witness) witness = join(cert.witness->members());
    out.records.rows.push_back({std::to_string(cfg.n), std::to_string(cfg.k),
                                fmt(cfg.alpha), fmt(cfg.beta),
                                cert.method == CertificateMethod::exact ? "exact" : "sampled",
                                cert.pass ? "pass" : "fail", witness,
                                std::to_string(cert.subsets_checked)});
    json j{{"n", cfg.n},
           {"k", cfg.k},
           {"alpha", cfg.alpha},
           {"beta", cfg.beta},
           {"method", cert.method == CertificateMethod::exact ? "exact" : "sampled"},
           {"verdict", cert.pass ? "pass" : "fail"},
           {"subsets_checked", cert.subsets_checked}};
    if (cert.witness) j["witness"] = cert.witness->members();
    out.artifacts.emplace_back("certificate.json", j.dump(2) + "\n");
    return out;
}

TaskOutput run_thresholds(const ExperimentConfig& cfg) {
    const int k_min = cfg.k_min ? cfg.k_min : 3;
    const int k_max = cfg.k_max ? cfg.k_max : 13;
    TaskOutput out;
    out.records.header = {"which", "k", "root", "bracket_lo", "bracket_hi", "tol"};
    auto emit = [&](ThresholdFamily fam, int k) {
        ThresholdSolution sol = solve_threshold(k, fam, cfg.tol);
        out.records.rows.push_back(
            {fam == ThresholdFamily::alpha1 ? "alpha1" : "alpha2", std::to_string(k),
             fmt(sol.root, "%.12f"), fmt(sol.bracket_lo, "%.15f"),
             fmt(sol.bracket_hi, "%.15f"), fmt(sol.tolerance, "%.1e")});
        ++out.trials;
        ++out.successes;
    };
    for (int k = k_min; k <= k_max; ++k) {
        if ((cfg.which == "alpha1" || cfg.which == "both") && k >= 3)
            emit(ThresholdFamily::alpha1, k);
        if ((cfg.which == "alpha2" || cfg.which == "both") && k >= 4)
            emit(ThresholdFamily::alpha2, k);
    }
    return out;
}

TaskOutput run_coupling(const ExperimentConfig& cfg) {
    if (cfg.n < 1 || cfg.k < 1 || cfg.m < 1)
        throw std::invalid_argument("coupling-verify: need n, k, m >= 1");
    TaskOutput out;
    out.records.header = {"n", "k", "m", "X", "Y", "count_x", "count_y", "total",
                          "dominates"};
    json pairs = json::array();
    std::vector<int> sizes;
    if (cfg.subset_size > 0)
        sizes.push_back(cfg.subset_size);
    else
        for (int l = 1; l <= cfg.n; ++l) sizes.push_back(l);

    for (int l : sizes) {
        // All comparable ordered pairs (X, Y), X != Y, of l-subsets of [n].
        std::vector<std::vector<int>> subsets;
        std::vector<int> cur;
        auto gen = [&](auto&& self, int start) -> void {
            if (static_cast<int>(cur.size()) == l) {
                subsets.push_back(cur);
                return;
            }
            for (int v = start; v <= cfg.n; ++v) {
                cur.push_back(v);
                self(self, v + 1);
                cur.pop_back();
            }
        };
        gen(gen, 1);
        for (const auto& xm : subsets)
            for (const auto& ym : subsets) {
                if (xm == ym) continue;
                VertexSubset x(xm), y(ym);
                if (!lex_leq(x, y)) continue;
                DominanceReport rep = verify_dominance_exact(cfg.n, cfg.k, x, y, cfg.m);
                ++out.trials;
                if (rep.dominates) ++out.successes;
                out.records.rows.push_back(
                    {std::to_string(cfg.n), std::to_string(cfg.k), std::to_string(cfg.m),
                     join(xm), join(ym), std::to_string(rep.count_x),
                     std::to_string(rep.count_y), std::to_string(rep.total),
                     rep.dominates ? "1" : "0"});
                pairs.push_back(json{{"X", xm},
                                     {"Y", ym},
                                     {"count_x", rep.count_x},
                                     {"count_y", rep.count_y},
                                     {"total", rep.total},
                                     {"dominates", rep.dominates}});
            }
    }
    json report{{"n", cfg.n}, {"k", cfg.k}, {"m", cfg.m}, {"pairs", pairs}};
    out.artifacts.emplace_back("coupling.json", report.dump(2) + "\n");
    return out;
}

TaskOutput run_generate(const ExperimentConfig& cfg) {
    if (cfg.n < 1 || cfg.k < 1)
        throw std::invalid_argument("generate: n and k must be >= 1");
    ChoiceSequence z = sample_choice_sequence(cfg.n, cfg.k, RngSpec{cfg.seed, 0});
    UagGraph g = build_graph(z);
    TaskOutput out;
    out.trials = 1;
    out.successes = 1;
    out.records.header = {"n", "k", "seed", "edges"};
    out.records.rows.push_back({std::to_string(cfg.n), std::to_string(cfg.k),
                                std::to_string(cfg.seed),
                                std::to_string(g.edge_count())});
    out.artifacts.emplace_back("sequence.txt", to_text(z));
    out.artifacts.emplace_back("graph.txt", to_text(g));
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << contents;
    if (!out) throw std::runtime_error("short write to " + path.string());
}

json config_to_json(const ExperimentConfig& c) {
    return json{{"task", c.task},
                {"n", c.n},
                {"k", c.k},
                {"stages", c.stages},
                {"trials", c.trials},
                {"seed", c.seed},
                {"mode", c.mode},
                {"k1", c.k1},
                {"k2", c.k2},
                {"alpha", c.alpha},
                {"beta", c.beta},
                {"sample_trials", c.sample_trials},
                {"m", c.m},
                {"subset_size", c.subset_size},
                {"tol", c.tol},
                {"k_min", c.k_min},
                {"k_max", c.k_max},
                {"which", c.which},
                {"threads", c.threads},
                {"out_dir", c.out_dir},
                {"format", c.format},
                {"emit_certificates", c.emit_certificates}};
}

}  // namespace

std::string CsvTable::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out << ',';
        out << header[i];
    }
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << row[i];
        }
        out << '\n';
    }
    return out.str();
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
    if (trials == 0) return {0.0, 1.0};
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2 * n)) / denom;
    const double half =
        z * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::string ExperimentConfig::to_json() const { return config_to_json(*this).dump(2); }

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
    json j = json::parse(text);
    ExperimentConfig c;
    c.task = j.value("task", "");
    c.n = j.value("n", 0);
    c.k = j.value("k", 0);
    c.stages = j.value("stages", std::vector<int>{});
    c.trials = j.value("trials", 1);
    c.seed = j.value("seed", std::uint64_t{0});
    c.mode = j.value("mode", "");
    c.k1 = j.value("k1", 0);
    c.k2 = j.value("k2", 0);
    c.alpha = j.value("alpha", 0.0);
    c.beta = j.value("beta", 0.0);
    c.sample_trials = j.value("sample_trials", std::uint64_t{100000});
    c.m = j.value("m", 0);
    c.subset_size = j.value("subset_size", 0);
    c.tol = j.value("tol", 1e-12);
    c.k_min = j.value("k_min", 0);
    c.k_max = j.value("k_max", 0);
    c.which = j.value("which", "both");
    c.threads = j.value("threads", 0);
    c.out_dir = j.value("out_dir", "");
    c.format = j.value("format", "csv");
    c.emit_certificates = j.value("emit_certificates", "");
    return c;
}

std::string build_id() { return UAG_BUILD_ID; }

RunResult run(const ExperimentConfig& config) {
    if (config.trials < 1) throw std::invalid_argument("run: trials must be >= 1");
    const int threads = config.threads > 0
                            ? config.threads
                            : static_cast<int>(std::thread::hardware_concurrency());
    const auto start = std::chrono::steady_clock::now();

    TaskOutput out;
    if (config.task == "matching-exp")
        out = run_matching(config, threads);
    else if (config.task == "hamilton-exp")
        out = run_hamilton(config, threads);
    else if (config.task == "expansion-check")
        out = run_expansion(config);
    else if (config.task == "solve-thresholds")
        out = run_thresholds(config);
    else if (config.task == "coupling-verify")
        out = run_coupling(config);
    else if (config.task == "generate")
        out = run_generate(config);
    else
        throw std::invalid_argument("run: unknown task '" + config.task + "'");

    const auto stop = std::chrono::steady_clock::now();
    RunResult result;
    result.config = config;
    result.records = std::move(out.records);
    result.artifacts = out.artifacts;
    result.summary.trials = out.trials;
    result.summary.successes = out.successes;
    result.summary.frequency =
        out.trials ? static_cast<double>(out.successes) / out.trials : 0.0;
    result.summary.interval = wilson_interval(out.successes, out.trials);
    result.summary.wallclock_ms =
        std::chrono::duration<double, std::milli>(stop - start).count();

    json summary{{"schema_version", 1},
                 {"task", config.task},
                 {"build", build_id()},
                 {"trials", result.summary.trials},
                 {"successes", result.summary.successes},
                 {"frequency", result.summary.frequency},
                 {"wilson_lo", result.summary.interval.lo},
                 {"wilson_hi", result.summary.interval.hi},
                 {"wallclock_ms", result.summary.wallclock_ms}};
    result.summary_json = summary.dump(2);
    json manifest{{"schema_version", 1},
                  {"build", build_id()},
                  {"config", config_to_json(config)}};
    result.manifest_json = manifest.dump(2);

    if (!config.out_dir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(config.out_dir);
        const fs::path dir(config.out_dir);
        write_file(dir / "records.csv", result.records.to_string());
        write_file(dir / "summary.json", result.summary_json + "\n");
        write_file(dir / "manifest.json", result.manifest_json + "\n");
        for (const auto& [name, contents] : out.artifacts)
            write_file(dir / name, contents);
        if (!out.certificate_lines.empty()) {
            std::string path = config.emit_certificates.empty()
                                   ? (dir / "certificates.txt").string()
                                   : config.emit_certificates;
            std::string body;
            for (const auto& line : out.certificate_lines) body += line + "\n";
            write_file(path, body);
        }
    } else if (!config.emit_certificates.empty() && !out.certificate_lines.empty()) {
        std::string body;
        for (const auto& line : out.certificate_lines) body += line + "\n";
        write_file(config.emit_certificates, body);
    }
    return result;
}

SweepResult sweep(const ExperimentConfig& base, const std::vector<int>& k_values) {
    SweepResult result;
    result.table.header = {"k", "trials", "successes", "frequency", "wilson_lo",
                           "wilson_hi"};
    for (int k : k_values) {
        ExperimentConfig cfg = base;
        cfg.out_dir.clear();
        if (base.task == "matching-exp") {
            cfg.k = k;
        } else if (base.task == "hamilton-exp") {
            cfg.k = k;
            cfg.stages.clear();
        } else {
            throw std::invalid_argument("sweep: task must be matching-exp or hamilton-exp");
        }
        RunResult point = run(cfg);
        result.points.push_back({k, point.summary});
        result.table.rows.push_back(
            {std::to_string(k), std::to_string(point.summary.trials),
             std::to_string(point.summary.successes), fmt(point.summary.frequency),
             fmt(point.summary.interval.lo), fmt(point.summary.interval.hi)});
    }
    if (!base.out_dir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(base.out_dir);
        write_file(fs::path(base.out_dir) / "sweep.csv", result.table.to_string());
    }
    return result;
}

RunResult replay_manifest(const std::string& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw std::runtime_error("cannot read manifest " + manifest_path);
    std::stringstream buf;
    buf << in.rdbuf();
    json manifest = json::parse(buf.str());
    if (!manifest.contains("config"))
        throw std::runtime_error("manifest missing 'config'");
    return run(ExperimentConfig::from_json(manifest["config"].dump()));
}

}  // namespace uag
