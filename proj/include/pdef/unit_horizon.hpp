#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "pdef/attacks.hpp"

namespace pdef {

// Two defenders on the unit circle, v1 >= v2 > 0.
struct DefenderPair {
    double v1 = 0.0;
    double v2 = 0.0;

    void validate() const;
};

// Canonical state: defender 1 at 0, defender 2 at +a, a in [0, 1/2].
struct UnitHorizonState {
    double a = 0.5;
    std::size_t remaining = 0;
};

enum class Capturer { none, first, second };

struct Transition {
    int reward = 0;
    double a_next = 0.0;
    Capturer capturer = Capturer::none;
    // End-of-step positions, in the canonical frame of the current step.
    double pos1 = 0.0;
    double pos2 = 0.0;
};

// Measure of the union of the two one-step reachable arcs at separation a;
// the probability that a uniform attack is capturable.
double coverage(double a, const DefenderPair& pair);

// Greedy policy: capture whenever possible, then maximize the next separation.
// x is the attack location in the canonical frame.
Transition step(double a, double x, const DefenderPair& pair);

// Runs the greedy policy against n i.i.d. uniform attacks from separation a0.
// Returns the number thwarted.
std::size_t simulate(const DefenderPair& pair, std::size_t n, double a0, std::uint64_t seed);

struct ThwartEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t trials = 0;
};

// Monte Carlo mean of simulate over trials, trial t seeded by trial_seed(master_seed, t).
ThwartEstimate estimate_thwarted(const DefenderPair& pair, std::size_t n, double a0, std::size_t trials,
                                 std::uint64_t master_seed);

struct GreedyRun {
    std::size_t thwarted = 0;
    std::size_t breached = 0;
};

// Greedy policy against an explicit unit-spaced sequence (times 1, 2, ..., n),
// defenders starting at raw positions start1 / start2 at time 0.
GreedyRun run_greedy(const DefenderPair& pair, const AttackSequence& attacks, double start1 = 0.0,
                     double start2 = 0.5);

// True iff no attack sequence can force a breach: v1 >= 1/2 or v1 + 3 v2 >= 1.
bool perfect_defense(const DefenderPair& pair);

struct CaptureBound {
    double w = 0.0;
    bool unbounded = false;  // perfect defense: capture-first is always optimal
    bool vacuous = false;    // w <= 0
    std::optional<std::uint64_t> n_threshold;
};

// w = min(1 - 2 v1, 1 - v1 - 3 v2, 2 v2, v1 - v2). With N <= 1/w remaining
// attacks, capturing the current attack is optimal.
CaptureBound capture_bound(const DefenderPair& pair);

// Union of reachable arcs covers the whole circle: a >= 1 - (v1 + v2).
bool full_coverage_check(double a, const DefenderPair& pair);

}  // namespace pdef
