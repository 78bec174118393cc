#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "pdef/attacks.hpp"
#include "pdef/csv.hpp"
#include "pdef/homogeneous.hpp"
#include "pdef/monotone_sweep.hpp"
#include "pdef/unit_horizon.hpp"

namespace pdef {

enum class ExperimentKind { grid_sweep, unit_horizon, homogeneous_alpha, breach_check };

std::string_view to_string(ExperimentKind kind);

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::grid_sweep;
    std::size_t m = 2;
    std::size_t n = 10;
    std::size_t trials = 50;
    double t_max = 25.0;
    double v_min = 0.0;
    double v_max = 0.6;
    std::size_t g = 32;
    std::uint64_t seed = 1;
    Setting setting = Setting::fixed_time;
    std::size_t jobs = 0;  // 0: hardware concurrency
    std::filesystem::path out_dir;  // empty: no files written
    bool save_attacks = false;

    void validate() const;
    SpeedGridSpec grid_spec() const { return {v_min, v_max, g}; }
    // Settings echoed at the top of every output file. Excludes jobs and out_dir,
    // which do not affect results.
    Preamble preamble() const;
};

std::size_t resolve_jobs(std::size_t jobs);

// Runs body(k) for k in [0, count) on up to `jobs` threads. Exceptions are
// collected; the one from the lowest index is rethrown after all work stops.
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& body);

// Attack sequence for a trial of a grid or alpha experiment.
AttackSequence trial_attacks(const ExperimentConfig& cfg, std::size_t trial);

struct GridExperiment {
    MeanGrid mean;
    OptGrid first_trial;
    std::vector<BestMixPoint> mix;
    std::vector<double> skip_fractions;  // per trial
    std::size_t dp_runs = 0;

    double mean_skip_fraction() const;
};

GridExperiment run_grid_experiment(const ExperimentConfig& cfg);

struct UnitHorizonExperiment {
    SpeedGridSpec spec;
    std::vector<double> mean;       // g x g, thwarted count per trial
    std::vector<double> std_error;  // g x g

    double mean_at(std::size_t i, std::size_t j) const { return mean[i * spec.g + j]; }
    double std_error_at(std::size_t i, std::size_t j) const { return std_error[i * spec.g + j]; }
};

UnitHorizonExperiment run_unit_horizon_experiment(const ExperimentConfig& cfg);

struct AlphaExperiment {
    std::vector<double> speeds;
    std::vector<std::vector<std::size_t>> m_values;  // [speed][trial]
    std::vector<AlphaPoint> points;
    AlphaFit fit;
};

// Evenly spaced speeds in (0, v_max]: v_max * k / count, k = 1..count.
std::vector<double> alpha_speeds(double v_max, std::size_t count);

AlphaExperiment run_alpha_experiment(const ExperimentConfig& cfg, const std::vector<double>& speeds);

struct BreachAssertion {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct BreachReport {
    DefenderPair pair;
    double eps = 0.0;
    bool perfect = false;
    std::vector<BreachAssertion> assertions;

    bool passed() const;
};

// Perfect-defense pairs: greedy policy must thwart every attack of the six-attack
// patterns (all four reflections) and of `random_sequences` fixed-time sequences.
// Other pairs: the breach sequence must give opt >= 1 and greedy breaches >= 1.
BreachReport run_breach_check(const DefenderPair& pair, double eps, std::size_t random_sequences = 100,
                              std::size_t n = 25, std::uint64_t seed = 1);

void write_breach_report(const std::filesystem::path& path, const BreachReport& report);

}  // namespace pdef
