#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "pdef/harness.hpp"

using namespace pdef;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("pdef_test_harness_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ExperimentConfig small_grid() {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::grid_sweep;
    cfg.n = 6;
    cfg.trials = 6;
    cfg.g = 8;
    cfg.seed = 5;
    return cfg;
}

}  // namespace

TEST_CASE("parallel_for runs every index once and rethrows the lowest failure") {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), 4, [&](std::size_t k) { ++hits[k]; });
    for (const auto& h : hits) CHECK(h.load() == 1);

    try {
        parallel_for(100, 4, [](std::size_t k) {
            if (k == 17 || k == 60) throw std::runtime_error(std::to_string(k));
        });
        FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()) == "17");
    }
    CHECK_NOTHROW(parallel_for(0, 4, [](std::size_t) { throw std::runtime_error("never"); }));
    CHECK(resolve_jobs(3) == 3);
    CHECK(resolve_jobs(0) >= 1);
}

TEST_CASE("trial seeds and attacks differ across trials") {
    auto cfg = small_grid();
    std::set<std::string> seen;
    for (std::size_t t = 0; t < 20; ++t) {
        const auto a = trial_attacks(cfg, t);
        CHECK(a.size() == cfg.n);
        seen.insert(format_real(a[0].location.coordinate()));
    }
    CHECK(seen.size() == 20);
}

TEST_CASE("grid experiment with one trial equals that trial's grid") {
    auto cfg = small_grid();
    cfg.trials = 1;
    const auto run = run_grid_experiment(cfg);
    const auto grid = sweep(trial_attacks(cfg, 0), cfg.grid_spec());
    for (std::size_t c = 0; c < grid.values.size(); ++c) CHECK(run.mean.values[c] == grid.values[c]);
    CHECK(run.mean.trials == 1);
    CHECK(run.skip_fractions.size() == 1);
}

TEST_CASE("grid experiment output is identical for any job count") {
    auto cfg = small_grid();
    cfg.save_attacks = true;
    cfg.out_dir = scratch("jobs1");
    cfg.jobs = 1;
    run_grid_experiment(cfg);
    const fs::path one = cfg.out_dir;
    cfg.out_dir = scratch("jobs4");
    cfg.jobs = 4;
    run_grid_experiment(cfg);
    for (const char* name : {"grid_mean.csv", "grid_mask.csv", "best_mix.csv", "attacks.csv"}) {
        CAPTURE(name);
        REQUIRE(fs::exists(one / name));
        CHECK(slurp(one / name) == slurp(cfg.out_dir / name));
    }
    const std::string mean = slurp(one / "grid_mean.csv");
    CHECK(mean.rfind("# experiment=grid-sweep\n", 0) == 0);
    CHECK(mean.find("# seed=5\n") != std::string::npos);
    CHECK(mean.find("\ni,j,v1,v2,value\n") != std::string::npos);
    CHECK(mean.find("jobs") == std::string::npos);
    CHECK(slurp(one / "best_mix.csv").find("\nv_tot,ratio\n") != std::string::npos);
}

TEST_CASE("attack files round-trip") {
    auto cfg = small_grid();
    cfg.setting = Setting::uniform_time;
    cfg.save_attacks = true;
    cfg.trials = 3;
    cfg.out_dir = scratch("roundtrip");
    run_grid_experiment(cfg);
    for (std::size_t t = 0; t < 3; ++t) {
        const auto original = trial_attacks(cfg, t);
        const auto loaded = read_attacks_csv(cfg.out_dir / "attacks.csv", t);
        REQUIRE(loaded.size() == original.size());
        for (std::size_t j = 0; j < loaded.size(); ++j) {
            CHECK(loaded[j].location == original[j].location);
            CHECK(loaded[j].time == original[j].time);
        }
    }
    const auto first = read_attacks_csv(cfg.out_dir / "attacks.csv");
    CHECK(first[0].time == trial_attacks(cfg, 0)[0].time);
    CHECK_THROWS(read_attacks_csv(cfg.out_dir / "attacks.csv", 99));
    CHECK_THROWS(read_attacks_csv(cfg.out_dir / "grid_mean.csv"));
    CHECK_THROWS(read_attacks_csv(cfg.out_dir / "missing.csv"));
}

TEST_CASE("failed trials are marked in the output") {
    auto cfg = small_grid();
    cfg.n = 50000;  // (n + 1)^2 exceeds the default table cap
    cfg.g = 2;
    cfg.trials = 1;
    cfg.out_dir = scratch("failed");
    CHECK_THROWS_AS(run_grid_experiment(cfg), std::runtime_error);
    const std::string mean = slurp(cfg.out_dir / "grid_mean.csv");
    CHECK(mean.find("# status=failed\n") != std::string::npos);
    CHECK(mean.find("# completed_trials=0\n") != std::string::npos);
}

TEST_CASE("config validation") {
    auto cfg = small_grid();
    cfg.m = 3;
    CHECK_THROWS_AS(run_grid_experiment(cfg), std::invalid_argument);
    cfg = small_grid();
    cfg.v_min = 0.6;
    CHECK_THROWS_AS(run_grid_experiment(cfg), std::invalid_argument);
    cfg = small_grid();
    cfg.trials = 0;
    CHECK_THROWS_AS(run_grid_experiment(cfg), std::invalid_argument);
    cfg = small_grid();
    cfg.setting = Setting::adversarial;
    CHECK_THROWS_AS(run_grid_experiment(cfg), std::invalid_argument);
}

TEST_CASE("unit-horizon experiment") {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::unit_horizon;
    cfg.n = 10;
    cfg.trials = 50;
    cfg.g = 8;
    cfg.v_max = 0.5;
    cfg.out_dir = scratch("unit");
    const auto run = run_unit_horizon_experiment(cfg);
    for (std::size_t i = 0; i < cfg.g; ++i) {
        for (std::size_t j = 0; j < cfg.g; ++j) {
            const double a = run.spec.speed(i);
            const double b = run.spec.speed(j);
            CHECK(run.mean_at(i, j) == run.mean_at(j, i));
            CHECK(run.mean_at(i, j) <= 10.0);
            if (perfect_defense({std::max(a, b), std::min(a, b)})) {
                CHECK(run.mean_at(i, j) == 10.0);
                CHECK(run.std_error_at(i, j) == 0.0);
            }
        }
    }
    CHECK(fs::exists(cfg.out_dir / "unit_grid.csv"));
    CHECK(fs::exists(cfg.out_dir / "unit_stderr.csv"));
}

TEST_CASE("alpha experiment") {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::homogeneous_alpha;
    cfg.setting = Setting::uniform_time;
    cfg.n = 15;
    cfg.t_max = 10.0;
    cfg.trials = 20;
    cfg.out_dir = scratch("alpha");
    const auto speeds = alpha_speeds(2.0, 8);
    CHECK(speeds.front() == 0.25);
    CHECK(speeds.back() == 2.0);
    const auto run = run_alpha_experiment(cfg, speeds);
    CHECK(run.points.size() == 8);
    for (std::size_t s = 1; s < run.points.size(); ++s) CHECK(run.points[s].mean_m <= run.points[s - 1].mean_m);
    CHECK(run.fit.alpha > 0.0);
    CHECK(slurp(cfg.out_dir / "homog_raw.csv").find("\nv,trial,M\n") != std::string::npos);
    const std::string summary = slurp(cfg.out_dir / "homog_summary.csv");
    CHECK(summary.find("\nn,t_max,alpha,r_squared,points_used\n") != std::string::npos);
    CHECK(summary.find("# points_dropped=") != std::string::npos);
}

TEST_CASE("breach check") {
    const auto perfect = run_breach_check({0.25, 0.25}, 0.01);
    CHECK(perfect.perfect);
    CHECK(perfect.passed());
    CHECK(perfect.assertions.size() == 5);

    const auto fast = run_breach_check({0.5, 0.01}, 0.01);
    CHECK(fast.perfect);
    CHECK(fast.passed());

    const auto breach = run_breach_check({0.3, 0.2}, 0.01);
    CHECK_FALSE(breach.perfect);
    CHECK(breach.passed());
    CHECK(breach.assertions.size() == 4);

    const auto bad_eps = run_breach_check({0.3, 0.2}, 0.3);
    CHECK_FALSE(bad_eps.passed());

    const fs::path dir = scratch("breach");
    fs::create_directories(dir);
    write_breach_report(dir / "breach.csv", breach);
    const std::string text = slurp(dir / "breach.csv");
    CHECK(text.find("\nassertion,passed,detail\n") != std::string::npos);
    CHECK(text.find("# perfect_defense=false\n") != std::string::npos);
}
