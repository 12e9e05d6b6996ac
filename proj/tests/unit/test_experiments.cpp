#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "uag/experiments.hpp"

using namespace uag;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ExperimentConfig small_matching() {
    ExperimentConfig cfg;
    cfg.task = "matching-exp";
    cfg.n = 120;
    cfg.k = 3;
    cfg.trials = 5;
    cfg.seed = 9;
    cfg.mode = "incremental";
    return cfg;
}

}  // namespace

TEST_SUITE_BEGIN("experiments");

TEST_CASE("wilson interval behaves") {
    WilsonInterval i1 = wilson_interval(0, 10);
    CHECK(i1.lo == 0.0);
    CHECK(i1.hi > 0.0);
    WilsonInterval i2 = wilson_interval(10, 10);
    CHECK(i2.hi == doctest::Approx(1.0));
    CHECK(i2.lo < 1.0);
    WilsonInterval i3 = wilson_interval(5, 10);
    CHECK(i3.lo < 0.5);
    CHECK(i3.hi > 0.5);
    // one trial: degenerately wide but valid
    WilsonInterval one = wilson_interval(1, 1);
    CHECK(one.hi - one.lo > 0.7);
    CHECK(one.lo >= 0.0);
    CHECK(one.hi <= 1.0);
}

TEST_CASE("config round trips through JSON losslessly") {
    ExperimentConfig cfg;
    cfg.task = "hamilton-exp";
    cfg.n = 321;
    cfg.stages = {10, 1, 1, 1};
    cfg.trials = 7;
    cfg.seed = 123456789123ull;
    cfg.alpha = 0.221;
    cfg.which = "alpha2";
    cfg.out_dir = "/tmp/somewhere";
    cfg.emit_certificates = "certs.txt";
    CHECK(ExperimentConfig::from_json(cfg.to_json()) == cfg);
}

TEST_CASE("runs are deterministic and thread-count independent") {
    ExperimentConfig cfg = small_matching();
    RunResult a = run(cfg);
    RunResult b = run(cfg);
    CHECK(a.records.to_string() == b.records.to_string());
    cfg.threads = 3;
    RunResult c = run(cfg);
    CHECK(a.records.to_string() == c.records.to_string());
    CHECK(a.summary.trials == 5);
    CHECK(a.records.rows.size() == 5);
}

TEST_CASE("manifest replay reproduces records byte for byte") {
    namespace fs = std::filesystem;
    const fs::path dir1 = fs::temp_directory_path() / "uag_test_run1";
    const fs::path dir2 = fs::temp_directory_path() / "uag_test_run2";
    fs::remove_all(dir1);
    fs::remove_all(dir2);

    ExperimentConfig cfg = small_matching();
    cfg.out_dir = dir1.string();
    run(cfg);
    CHECK(fs::exists(dir1 / "records.csv"));
    CHECK(fs::exists(dir1 / "summary.json"));
    CHECK(fs::exists(dir1 / "manifest.json"));

    RunResult replayed = replay_manifest((dir1 / "manifest.json").string());
    ExperimentConfig again = replayed.config;
    again.out_dir = dir2.string();
    run(again);
    CHECK(slurp(dir1 / "records.csv") == slurp(dir2 / "records.csv"));
    fs::remove_all(dir1);
    fs::remove_all(dir2);
}

TEST_CASE("two-stage matching runs end to end") {
    ExperimentConfig cfg;
    cfg.task = "matching-exp";
    cfg.n = 200;
    cfg.mode = "two-stage";
    cfg.k1 = 4;
    cfg.k2 = 1;
    cfg.trials = 4;
    cfg.seed = 11;
    RunResult res = run(cfg);
    CHECK(res.records.rows.size() == 4);
    CHECK(res.summary.frequency >= 0.5);  // k=5 total is comfortably matchable
}

TEST_CASE("invalid configs are rejected before any work") {
    ExperimentConfig bad;
    bad.task = "matching-exp";
    bad.n = 0;
    CHECK_THROWS_AS(run(bad), std::invalid_argument);
    bad = small_matching();
    bad.trials = 0;
    CHECK_THROWS_AS(run(bad), std::invalid_argument);
    bad = small_matching();
    bad.task = "no-such-task";
    CHECK_THROWS_AS(run(bad), std::invalid_argument);
}

TEST_CASE("matching frequency sweep is nondecreasing within interval overlap") {
    ExperimentConfig base;
    base.task = "matching-exp";
    base.n = 400;
    base.trials = 16;
    base.seed = 21;
    base.mode = "incremental";
    SweepResult swept = sweep(base, {1, 2, 3, 4});
    REQUIRE(swept.points.size() == 4);
    CHECK(swept.points.front().summary.frequency <= 0.2);  // k=1: trees
    CHECK(swept.points.back().summary.frequency >= 0.8);   // k=4
    for (std::size_t i = 1; i < swept.points.size(); ++i)
        CHECK(swept.points[i].summary.interval.hi >=
              swept.points[i - 1].summary.interval.lo);
}

TEST_CASE("hamilton sweep: k=2 is hopeless, k=13 is comfortable") {
    ExperimentConfig base;
    base.task = "hamilton-exp";
    base.n = 60;
    base.trials = 5;
    base.seed = 31;
    SweepResult swept = sweep(base, {2, 13});
    CHECK(swept.points[0].summary.frequency <= 0.2);
    CHECK(swept.points[1].summary.frequency >= 0.8);
}

TEST_CASE("solve-thresholds emits the published table layout") {
    ExperimentConfig cfg;
    cfg.task = "solve-thresholds";
    cfg.k_min = 4;
    cfg.k_max = 13;
    cfg.which = "alpha2";
    RunResult res = run(cfg);
    REQUIRE(res.records.rows.size() == 10);
    const double published[] = {0.005, 0.048, 0.101, 0.144, 0.177,
                                0.202, 0.221, 0.235, 0.247, 0.257};
    for (int i = 0; i < 10; ++i) {
        CHECK(res.records.rows[i][0] == "alpha2");
        CHECK(res.records.rows[i][1] == std::to_string(4 + i));
        const double root = std::stod(res.records.rows[i][2]);
        CHECK(root > published[i]);
        CHECK(root < published[i] + 1e-3);
    }
}

TEST_CASE("generate writes both serialization formats") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "uag_test_gen";
    fs::remove_all(dir);
    ExperimentConfig cfg;
    cfg.task = "generate";
    cfg.n = 12;
    cfg.k = 2;
    cfg.seed = 3;
    cfg.out_dir = dir.string();
    run(cfg);
    const std::string seq = slurp(dir / "sequence.txt");
    CHECK(seq.rfind("12 2\n", 0) == 0);
    const std::string graph = slurp(dir / "graph.txt");
    CHECK(graph.rfind("12\n", 0) == 0);
    fs::remove_all(dir);
}

TEST_CASE("coupling-verify counts pairs exactly") {
    ExperimentConfig cfg;
    cfg.task = "coupling-verify";
    cfg.n = 4;
    cfg.k = 1;
    cfg.m = 1;
    cfg.subset_size = 2;
    RunResult res = run(cfg);
    // comparable ordered pairs of distinct 2-subsets of [4]
    CHECK(res.summary.trials == res.records.rows.size());
    CHECK(res.summary.frequency == 1.0);  // dominance holds on all of them
    for (const auto& row : res.records.rows) CHECK(row[7] == "6");  // total = 3!
}

TEST_SUITE_END();
