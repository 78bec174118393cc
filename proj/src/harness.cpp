#include "pdef/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "pdef/dp_solver.hpp"
#include "pdef/rng.hpp"

namespace pdef {

std::string_view to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::grid_sweep: return "grid-sweep";
        case ExperimentKind::unit_horizon: return "unit-horizon";
        case ExperimentKind::homogeneous_alpha: return "homogeneous-alpha";
        case ExperimentKind::breach_check: return "breach-check";
    }
    return "unknown";
}

void ExperimentConfig::validate() const {
    if (m < 1 || n < 1 || trials < 1) throw std::invalid_argument("m, n and trials must be at least 1");
    if (!(v_min < v_max) || v_min < 0.0) throw std::invalid_argument("need 0 <= v_min < v_max");
    if (kind == ExperimentKind::grid_sweep) {
        if (m != 2) throw std::invalid_argument("grid sweeps need m = 2");
        if (g < 2) throw std::invalid_argument("grid sweeps need g >= 2");
    }
    if (kind == ExperimentKind::unit_horizon && g < 2) throw std::invalid_argument("need g >= 2");
    if (setting == Setting::uniform_time && !(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
    if (setting == Setting::adversarial) throw std::invalid_argument("experiments use uniform or fixed settings");
}

Preamble ExperimentConfig::preamble() const {
    Preamble p{
        {"experiment", std::string(to_string(kind))},
        {"setting", std::string(to_string(setting))},
        {"m", std::to_string(m)},
        {"n", std::to_string(n)},
        {"trials", std::to_string(trials)},
        {"v_min", format_real(v_min)},
        {"v_max", format_real(v_max)},
        {"g", std::to_string(g)},
        {"seed", std::to_string(seed)},
    };
    if (setting == Setting::uniform_time) p.emplace_back("t_max", format_real(t_max));
    return p;
}

std::size_t resolve_jobs(std::size_t jobs) {
    if (jobs > 0) return jobs;
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::min(resolve_jobs(jobs), std::max<std::size_t>(count, 1));
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    std::size_t first_index = count;

    auto work = [&] {
        for (std::size_t k = next++; k < count; k = next++) {
            try {
                body(k);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (k < first_index) {
                    first_index = k;
                    first_error = std::current_exception();
                }
            }
        }
    };

    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);
}

AttackSequence trial_attacks(const ExperimentConfig& cfg, std::size_t trial) {
    const std::uint64_t seed = trial_seed(cfg.seed, trial);
    if (cfg.setting == Setting::fixed_time) return gen_fixed(cfg.n, seed);
    return gen_uniform(cfg.n, cfg.t_max, seed);
}

namespace {

void write_grid_csv(const std::filesystem::path& path, const Preamble& preamble, const SpeedGridSpec& spec,
                    const std::function<std::string(std::size_t, std::size_t)>& value) {
    CsvWriter csv(path, preamble, {"i", "j", "v1", "v2", "value"});
    for (std::size_t i = 0; i < spec.g; ++i) {
        for (std::size_t j = 0; j < spec.g; ++j) {
            csv.row({std::to_string(i), std::to_string(j), format_real(spec.speed(i)), format_real(spec.speed(j)),
                     value(i, j)});
        }
    }
    csv.close();
}

Preamble with(Preamble p, const std::string& key, const std::string& value) {
    p.emplace_back(key, value);
    return p;
}

}  // namespace

double GridExperiment::mean_skip_fraction() const {
    if (skip_fractions.empty()) return 0.0;
    double sum = 0.0;
    for (double s : skip_fractions) sum += s;
    return sum / static_cast<double>(skip_fractions.size());
}

GridExperiment run_grid_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.kind != ExperimentKind::grid_sweep) throw std::invalid_argument("not a grid-sweep config");
    const SpeedGridSpec spec = cfg.grid_spec();

    std::vector<OptGrid> grids(cfg.trials);
    std::vector<std::string> errors(cfg.trials);
    std::vector<TrialAttacks> sequences(cfg.save_attacks ? cfg.trials : 0);
    parallel_for(cfg.trials, cfg.jobs, [&](std::size_t t) {
        try {
            AttackSequence attacks = trial_attacks(cfg, t);
            grids[t] = sweep(attacks, spec);
            if (cfg.save_attacks) sequences[t] = {t, std::move(attacks)};
        } catch (const std::exception& e) {
            errors[t] = e.what();
        }
    });

    std::vector<OptGrid> done;
    std::string failure;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        if (errors[t].empty()) {
            done.push_back(grids[t]);
        } else if (failure.empty()) {
            failure = "trial " + std::to_string(t) + ": " + errors[t];
        }
    }

    GridExperiment out;
    if (!done.empty()) {
        out.mean = average_grids(done);
        out.first_trial = done.front();
        out.mix = best_mix(out.mean);
        for (const auto& g : done) {
            out.skip_fractions.push_back(g.skip_fraction());
            out.dp_runs += g.dp_runs;
        }
    }

    if (!cfg.out_dir.empty()) {
        std::filesystem::create_directories(cfg.out_dir);
        Preamble pre = cfg.preamble();
        if (!failure.empty()) {
            pre.emplace_back("status", "failed");
            pre.emplace_back("failure", failure);
            pre.emplace_back("completed_trials", std::to_string(done.size()));
        }
        if (!done.empty()) {
            write_grid_csv(cfg.out_dir / "grid_mean.csv", with(pre, "content", "mean opt"), spec,
                           [&](std::size_t i, std::size_t j) { return format_real(out.mean.value(i, j)); });
            write_grid_csv(cfg.out_dir / "grid_mask.csv", with(pre, "content", "fraction of trials running the DP"),
                           spec, [&](std::size_t i, std::size_t j) {
                               return format_real(out.mean.computed_fraction[i * spec.g + j]);
                           });
            CsvWriter mix(cfg.out_dir / "best_mix.csv", with(pre, "content", "best-mix ratio"), {"v_tot", "ratio"});
            for (const auto& p : out.mix) mix.row({format_real(p.v_tot), format_real(p.ratio)});
            mix.close();
        } else {
            CsvWriter(cfg.out_dir / "grid_mean.csv", with(pre, "content", "mean opt"), {"i", "j", "v1", "v2", "value"})
                .close();
        }
        if (cfg.save_attacks) {
            std::vector<TrialAttacks> kept;
            for (std::size_t t = 0; t < cfg.trials; ++t) {
                if (errors[t].empty()) kept.push_back(sequences[t]);
            }
            write_attacks_csv(cfg.out_dir / "attacks.csv", pre, kept);
        }
    }
    if (!failure.empty()) throw std::runtime_error("grid experiment failed at " + failure);
    return out;
}

UnitHorizonExperiment run_unit_horizon_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.kind != ExperimentKind::unit_horizon) throw std::invalid_argument("not a unit-horizon config");
    UnitHorizonExperiment out;
    out.spec = cfg.grid_spec();
    const std::size_t g = out.spec.g;
    out.mean.assign(g * g, 0.0);
    out.std_error.assign(g * g, 0.0);

    // One work unit per cell with v1 >= v2; every cell reuses the same per-trial
    // seeds, so all speed pairs face the same attack streams.
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t i = 0; i < g; ++i) {
        for (std::size_t j = 0; j <= i; ++j) cells.emplace_back(i, j);
    }
    parallel_for(cells.size(), cfg.jobs, [&](std::size_t c) {
        const auto [i, j] = cells[c];
        const DefenderPair pair{out.spec.speed(i), out.spec.speed(j)};
        const ThwartEstimate est = estimate_thwarted(pair, cfg.n, 0.5, cfg.trials, cfg.seed);
        for (auto [r, k] : {std::pair{i, j}, std::pair{j, i}}) {
            out.mean[r * g + k] = est.mean;
            out.std_error[r * g + k] = est.std_error;
        }
    });

    if (!cfg.out_dir.empty()) {
        std::filesystem::create_directories(cfg.out_dir);
        const Preamble pre = cfg.preamble();
        write_grid_csv(cfg.out_dir / "unit_grid.csv", with(pre, "content", "mean thwarted"), out.spec,
                       [&](std::size_t i, std::size_t j) { return format_real(out.mean_at(i, j)); });
        write_grid_csv(cfg.out_dir / "unit_stderr.csv", with(pre, "content", "standard error of mean thwarted"),
                       out.spec, [&](std::size_t i, std::size_t j) { return format_real(out.std_error_at(i, j)); });
    }
    return out;
}

std::vector<double> alpha_speeds(double v_max, std::size_t count) {
    if (count == 0 || !(v_max > 0.0)) throw std::invalid_argument("alpha_speeds: need count >= 1 and v_max > 0");
    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; ++k) {
        out[k] = v_max * static_cast<double>(k + 1) / static_cast<double>(count);
    }
    return out;
}

AlphaExperiment run_alpha_experiment(const ExperimentConfig& cfg, const std::vector<double>& speeds) {
    cfg.validate();
    if (cfg.kind != ExperimentKind::homogeneous_alpha) throw std::invalid_argument("not a homogeneous-alpha config");
    if (speeds.empty()) throw std::invalid_argument("alpha experiment needs speeds");
    AlphaExperiment out;
    out.speeds = speeds;
    out.m_values.assign(speeds.size(), std::vector<std::size_t>(cfg.trials, 0));
    parallel_for(cfg.trials, cfg.jobs, [&](std::size_t t) {
        const AttackSequence attacks = trial_attacks(cfg, t);
        for (std::size_t s = 0; s < speeds.size(); ++s) out.m_values[s][t] = min_defenders(attacks, speeds[s]);
    });
    for (std::size_t s = 0; s < speeds.size(); ++s) {
        double sum = 0.0;
        for (std::size_t m : out.m_values[s]) sum += static_cast<double>(m);
        out.points.push_back({speeds[s], sum / static_cast<double>(cfg.trials)});
    }

    std::string fit_error;
    try {
        out.fit = alpha_estimate(out.points);
    } catch (const std::invalid_argument& e) {
        fit_error = e.what();
    }

    if (!cfg.out_dir.empty()) {
        std::filesystem::create_directories(cfg.out_dir);
        Preamble pre = cfg.preamble();
        if (!fit_error.empty()) {
            pre.emplace_back("status", "failed");
            pre.emplace_back("failure", fit_error);
        }
        CsvWriter raw(cfg.out_dir / "homog_raw.csv", pre, {"v", "trial", "M"});
        for (std::size_t s = 0; s < speeds.size(); ++s) {
            for (std::size_t t = 0; t < cfg.trials; ++t) {
                raw.row({format_real(speeds[s]), std::to_string(t), std::to_string(out.m_values[s][t])});
            }
        }
        raw.close();
        if (fit_error.empty()) {
            CsvWriter summary(cfg.out_dir / "homog_summary.csv",
                              with(pre, "points_dropped", std::to_string(out.fit.points_dropped)),
                              {"n", "t_max", "alpha", "r_squared", "points_used"});
            summary.row({std::to_string(cfg.n), format_real(cfg.t_max), format_real(out.fit.alpha),
                         format_real(out.fit.r_squared), std::to_string(out.fit.points_used)});
            summary.close();
        }
    }
    if (!fit_error.empty()) throw std::runtime_error("alpha experiment: " + fit_error);
    return out;
}

bool BreachReport::passed() const {
    return std::all_of(assertions.begin(), assertions.end(), [](const auto& a) { return a.passed; });
}

BreachReport run_breach_check(const DefenderPair& pair, double eps, std::size_t random_sequences, std::size_t n,
                              std::uint64_t seed) {
    pair.validate();
    BreachReport report;
    report.pair = pair;
    report.eps = eps;
    report.perfect = perfect_defense(pair);

    if (report.perfect) {
        const AttackSequence base = adversarial_pattern(pair.v1, pair.v2, eps);
        const std::pair<const char*, AttackSequence> patterns[] = {
            {"pattern", base},
            {"reversed pattern", base.reversed()},
            {"negated pattern", base.negated()},
            {"reversed negated pattern", base.reversed().negated()},
        };
        for (const auto& [name, seq] : patterns) {
            const GreedyRun run = run_greedy(pair, seq);
            report.assertions.push_back({std::string("greedy thwarts ") + name, run.breached == 0,
                                         std::to_string(run.breached) + " breaches"});
        }
        std::size_t breached = 0;
        std::size_t failing = 0;
        for (std::size_t k = 0; k < random_sequences; ++k) {
            const GreedyRun run = run_greedy(pair, gen_fixed(n, trial_seed(seed, k)));
            breached += run.breached;
            failing += run.breached > 0;
        }
        report.assertions.push_back({"greedy thwarts " + std::to_string(random_sequences) + " random sequences",
                                     breached == 0,
                                     std::to_string(breached) + " breaches in " + std::to_string(failing) +
                                         " sequences"});
        return report;
    }

    AttackSequence seq;
    try {
        seq = breach_sequence(pair.v1, pair.v2, eps);
    } catch (const std::invalid_argument& e) {
        report.assertions.push_back({"construct breach sequence", false, e.what()});
        return report;
    }
    const SpeedVector v{pair.v1, pair.v2};
    const std::pair<const char*, AttackSequence> patterns[] = {
        {"breach sequence", seq},
        {"reversed breach sequence", seq.reversed()},
        {"negated breach sequence", seq.negated()},
    };
    for (const auto& [name, s] : patterns) {
        const auto opt = opt_dp(v, s).opt;
        report.assertions.push_back({std::string("opt >= 1 on ") + name, opt >= 1, "opt = " + std::to_string(opt)});
    }
    const GreedyRun run = run_greedy(pair, seq);
    report.assertions.push_back({"greedy breached on breach sequence", run.breached >= 1,
                                 std::to_string(run.breached) + " breaches"});
    return report;
}

void write_breach_report(const std::filesystem::path& path, const BreachReport& report) {
    const Preamble pre{{"experiment", "breach-check"},
                       {"v1", format_real(report.pair.v1)},
                       {"v2", format_real(report.pair.v2)},
                       {"eps", format_real(report.eps)},
                       {"perfect_defense", report.perfect ? "true" : "false"}};
    CsvWriter csv(path, pre, {"assertion", "passed", "detail"});
    for (const auto& a : report.assertions) csv.row({a.name, a.passed ? "1" : "0", a.detail});
    csv.close();
}

}  // namespace pdef
