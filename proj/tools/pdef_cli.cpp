// pdef: perimeter-defense solver and experiment runner.
//
//   pdef solve  --gen fixed --n 5 --seed 1 --speeds 0.3,0.2
//   pdef sweep  --setting fixed --n 10 --g 32 --trials 50 --seed 7 --out r/
//   pdef unit   --g 32 --trials 500 --n 25 --vmax 0.5 --out r/
//   pdef homog  --n 25 --tmax 15 --trials 300 --out r/
//   pdef breach --v1 0.3 --v2 0.2 --eps 0.01
//
// Exit codes: 0 ok, 1 failed breach assertion or runtime error, 2 bad
// arguments or input, 3 DP table over capacity.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pdef/attacks.hpp"
#include "pdef/csv.hpp"
#include "pdef/dp_solver.hpp"
#include "pdef/harness.hpp"
#include "pdef/rng.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void echo_config(const std::string& command, const pdef::Preamble& items) {
    std::cerr << "[pdef " << command << "]";
    for (const auto& [k, v] : items) std::cerr << ' ' << k << '=' << v;
    std::cerr << '\n';
}

void echo_config(const std::string& command, const pdef::ExperimentConfig& cfg) {
    pdef::Preamble items = cfg.preamble();
    items.emplace_back("jobs", std::to_string(pdef::resolve_jobs(cfg.jobs)));
    items.emplace_back("out", cfg.out_dir.string());
    echo_config(command, items);
}

std::string join(const std::vector<double>& xs) {
    std::string s;
    for (std::size_t k = 0; k < xs.size(); ++k) s += (k ? "," : "") + pdef::format_real(xs[k]);
    return s;
}

struct SolveArgs {
    std::string attacks_file;
    std::optional<std::uint64_t> trial;
    std::string gen;
    std::size_t n = 10;
    double t_max = 25.0;
    std::uint64_t seed = 1;
    std::vector<double> speeds;
    std::vector<double> weights;
    std::uint64_t max_entries = std::uint64_t{1} << 31;
    std::string save_attacks;
};

int run_solve(const SolveArgs& a) {
    if (a.attacks_file.empty() == a.gen.empty()) throw UsageError("solve needs exactly one of --attacks or --gen");
    pdef::AttackSequence attacks;
    if (!a.attacks_file.empty()) {
        try {
            attacks = pdef::read_attacks_csv(a.attacks_file, a.trial);
        } catch (const std::exception& e) {
            throw UsageError(e.what());
        }
    } else if (a.gen == "fixed") {
        attacks = pdef::gen_fixed(a.n, a.seed);
    } else {
        attacks = pdef::gen_uniform(a.n, a.t_max, a.seed);
    }
    const pdef::SpeedVector v(a.speeds);

    pdef::Preamble cfg{{"attacks", a.attacks_file.empty() ? "gen:" + a.gen : a.attacks_file},
                       {"n", std::to_string(attacks.size())},
                       {"speeds", join({v.speeds().begin(), v.speeds().end()})}};
    if (!a.gen.empty()) {
        cfg.emplace_back("seed", std::to_string(a.seed));
        if (a.gen == "uniform") cfg.emplace_back("t_max", pdef::format_real(a.t_max));
    }
    if (!a.weights.empty()) cfg.emplace_back("weights", join(a.weights));
    echo_config("solve", cfg);

    if (!a.save_attacks.empty()) pdef::write_attacks_csv(a.save_attacks, cfg, {{0, attacks}});

    pdef::DpOptions options;
    options.max_table_entries = a.max_entries;
    pdef::DefensePlan plan;
    if (a.weights.empty()) {
        auto result = pdef::opt_dp(v, attacks, options);
        std::cout << "opt " << result.opt << '\n';
        plan = std::move(result.plan);
    } else {
        auto result = pdef::opt_dp_weighted(v, attacks, a.weights, options);
        std::cout << "damage " << pdef::format_real(result.damage) << '\n';
        plan = std::move(result.plan);
    }
    const std::size_t breached = pdef::verify_plan(v, attacks, plan);
    std::cout << "breached " << breached << " of " << attacks.size() << '\n';
    for (std::size_t i = 0; i < plan.lists.size(); ++i) {
        std::cout << "defender " << i + 1 << " speed " << pdef::format_real(v[i]) << ":";
        for (std::size_t j : plan.lists[i]) {
            const auto& atk = attacks[j - 1];
            std::cout << ' ' << j << "@(" << pdef::format_real(atk.location.coordinate()) << ", "
                      << pdef::format_real(atk.time) << ')';
        }
        std::cout << '\n';
    }
    return 0;
}

void add_common(CLI::App* cmd, pdef::ExperimentConfig& cfg, bool& paper_scale) {
    cmd->add_option("--n", cfg.n, "Attacks per sequence")->check(CLI::PositiveNumber);
    cmd->add_option("--trials", cfg.trials, "Number of trials T")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", cfg.seed, "Master seed");
    cmd->add_option("--vmin", cfg.v_min, "Exclusive lower speed bound");
    cmd->add_option("--vmax", cfg.v_max, "Inclusive upper speed bound");
    cmd->add_option("--jobs", cfg.jobs, "Worker threads (0 = available parallelism)");
    cmd->add_option("--out", cfg.out_dir, "Output directory")->required();
    cmd->add_flag("--paper-scale", paper_scale, "Use the full-scale experiment parameters");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Perimeter defense solver and experiment runner"};
    app.require_subcommand(1);

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "Optimal defense plan for one attack sequence");
    solve_cmd->add_option("--attacks", solve.attacks_file, "Attack CSV (trial,j,location,time)");
    solve_cmd->add_option("--trial", solve.trial, "Trial to read from the attack CSV (default: first)");
    solve_cmd->add_option("--gen", solve.gen, "Generate attacks instead: fixed or uniform")
        ->check(CLI::IsMember({"fixed", "uniform"}));
    solve_cmd->add_option("--n", solve.n, "Attacks to generate")->check(CLI::PositiveNumber);
    solve_cmd->add_option("--tmax", solve.t_max, "Attack window for --gen uniform")->check(CLI::PositiveNumber);
    solve_cmd->add_option("--seed", solve.seed, "Generator seed");
    solve_cmd->add_option("--speeds", solve.speeds, "Defender speeds, comma separated")
        ->delimiter(',')
        ->required();
    solve_cmd->add_option("--weights", solve.weights, "Per-attack damage, comma separated")->delimiter(',');
    solve_cmd->add_option("--max-entries", solve.max_entries, "DP table entry cap");
    solve_cmd->add_option("--save-attacks", solve.save_attacks, "Write the attack sequence to this CSV");

    pdef::ExperimentConfig sweep_cfg;
    sweep_cfg.kind = pdef::ExperimentKind::grid_sweep;
    bool sweep_paper = false;
    std::string sweep_setting = "fixed";
    auto* sweep_cmd = app.add_subcommand("sweep", "Speed-grid sweep of opt over random attack sequences");
    add_common(sweep_cmd, sweep_cfg, sweep_paper);
    sweep_cmd->add_option("--setting", sweep_setting, "Attack times: fixed or uniform")
        ->check(CLI::IsMember({"fixed", "uniform"}));
    sweep_cmd->add_option("--tmax", sweep_cfg.t_max, "Attack window for uniform times")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--g", sweep_cfg.g, "Grains per speed axis")->check(CLI::Range(2, 1 << 16));
    sweep_cmd->add_flag("--save-attacks", sweep_cfg.save_attacks, "Also write attacks.csv");

    pdef::ExperimentConfig unit_cfg;
    unit_cfg.kind = pdef::ExperimentKind::unit_horizon;
    unit_cfg.n = 25;
    unit_cfg.trials = 500;
    unit_cfg.v_max = 0.5;
    bool unit_paper = false;
    auto* unit_cmd = app.add_subcommand("unit", "Unit-horizon greedy policy, Monte Carlo over a speed grid");
    add_common(unit_cmd, unit_cfg, unit_paper);
    unit_cmd->add_option("--g", unit_cfg.g, "Grains per speed axis")->check(CLI::Range(2, 1 << 16));

    pdef::ExperimentConfig homog_cfg;
    homog_cfg.kind = pdef::ExperimentKind::homogeneous_alpha;
    homog_cfg.setting = pdef::Setting::uniform_time;
    homog_cfg.n = 25;
    homog_cfg.t_max = 15.0;
    homog_cfg.trials = 300;
    homog_cfg.v_max = 4.0;
    std::size_t homog_speeds = 25;
    bool homog_paper = false;
    std::string homog_setting = "uniform";
    auto* homog_cmd = app.add_subcommand("homog", "Minimum homogeneous team size and the alpha exponent");
    add_common(homog_cmd, homog_cfg, homog_paper);
    homog_cmd->add_option("--setting", homog_setting, "Attack times: uniform or fixed")
        ->check(CLI::IsMember({"fixed", "uniform"}));
    homog_cmd->add_option("--tmax", homog_cfg.t_max, "Attack window")->check(CLI::PositiveNumber);
    homog_cmd->add_option("--speeds", homog_speeds, "Number of evenly spaced speeds in (0, vmax]")
        ->check(CLI::PositiveNumber);

    double v1 = 0.3;
    double v2 = 0.2;
    double eps = 0.01;
    std::size_t breach_random = 100;
    std::uint64_t breach_seed = 1;
    std::string breach_out;
    auto* breach_cmd = app.add_subcommand("breach", "Check perfect defense or construct a forced breach");
    breach_cmd->add_option("--v1", v1, "Faster defender speed")->required();
    breach_cmd->add_option("--v2", v2, "Slower defender speed")->required();
    breach_cmd->add_option("--eps", eps, "Breach-sequence margin");
    breach_cmd->add_option("--random", breach_random, "Random fixed-time sequences for the perfect-defense check");
    breach_cmd->add_option("--seed", breach_seed, "Seed for the random sequences");
    breach_cmd->add_option("--out", breach_out, "Optional output directory for breach.csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*solve_cmd) return run_solve(solve);

        if (*sweep_cmd) {
            sweep_cfg.setting = pdef::parse_setting(sweep_setting);
            if (sweep_paper) {
                sweep_cfg.g = 256;
                sweep_cfg.trials = 200;
                sweep_cfg.n = 25;
                sweep_cfg.t_max = 25.0;
                sweep_cfg.v_min = 0.0;
                sweep_cfg.v_max = 0.6;
            }
            sweep_cfg.validate();
            echo_config("sweep", sweep_cfg);
            const auto result = pdef::run_grid_experiment(sweep_cfg);
            std::cerr << "mean skip fraction " << pdef::format_real(result.mean_skip_fraction()) << ", DP runs "
                      << result.dp_runs << '\n';
            return 0;
        }

        if (*unit_cmd) {
            if (unit_paper) {
                unit_cfg.g = 128;
                unit_cfg.trials = 10000;
                unit_cfg.n = 25;
                unit_cfg.v_min = 0.0;
                unit_cfg.v_max = 0.5;
            }
            unit_cfg.validate();
            echo_config("unit", unit_cfg);
            pdef::run_unit_horizon_experiment(unit_cfg);
            return 0;
        }

        if (*homog_cmd) {
            homog_cfg.setting = pdef::parse_setting(homog_setting);
            if (homog_paper) {
                homog_cfg.trials = 1000;
                homog_speeds = 50;
                homog_cfg.n = 25;
                homog_cfg.v_max = 4.0;
            }
            homog_cfg.validate();
            echo_config("homog", homog_cfg);
            const auto result = pdef::run_alpha_experiment(homog_cfg, pdef::alpha_speeds(homog_cfg.v_max, homog_speeds));
            std::cout << "alpha " << pdef::format_real(result.fit.alpha) << " r_squared "
                      << pdef::format_real(result.fit.r_squared) << " points_used " << result.fit.points_used
                      << '\n';
            return 0;
        }

        if (*breach_cmd) {
            const pdef::DefenderPair pair{v1, v2};
            echo_config("breach", {{"v1", pdef::format_real(v1)},
                                   {"v2", pdef::format_real(v2)},
                                   {"eps", pdef::format_real(eps)},
                                   {"random", std::to_string(breach_random)},
                                   {"seed", std::to_string(breach_seed)}});
            const auto report = pdef::run_breach_check(pair, eps, breach_random, 25, breach_seed);
            for (const auto& a : report.assertions) {
                std::cout << (a.passed ? "PASS " : "FAIL ") << a.name << " (" << a.detail << ")\n";
            }
            if (!breach_out.empty()) {
                std::filesystem::create_directories(breach_out);
                pdef::write_breach_report(std::filesystem::path(breach_out) / "breach.csv", report);
            }
            if (!report.passed()) return kExitFailure;
            std::cout << (report.perfect ? "perfect defense confirmed" : "breach confirmed") << '\n';
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const pdef::CapacityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCapacity;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return 0;
}
