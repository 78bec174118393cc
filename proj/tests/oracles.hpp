#pragma once

// Exhaustive reference implementations used only by tests. None of these call
// into the code paths they check.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pdef/attacks.hpp"
#include "pdef/homogeneous.hpp"
#include "pdef/rng.hpp"
#include "pdef/unit_horizon.hpp"

namespace oracle {

// Arc distance recomputed from scratch: min(|d|, 1 - |d|) on reduced coordinates.
double arc_dist(double y1, double y2);

// Largest matching by trying every assignment of left vertices.
std::size_t max_matching(const pdef::BipartiteGraph& graph);

// Fewest chains covering all attacks, each chain reachable at speed v,
// found by exhaustive assignment of attacks (in time order) to chains.
std::size_t min_path_cover(const pdef::AttackSequence& attacks, double v);

// Best separation after one unit step, scanning `resolution` candidate
// positions per moving defender. With a feasible capture, only moves that
// keep some defender on x are considered.
struct StepOracle {
    bool capture = false;
    double best_separation = 0.0;
};
StepOracle step_bruteforce(double a, double x, const pdef::DefenderPair& pair, std::size_t resolution);

// Random attack sequence mixing uniform and fixed times, n attacks.
pdef::AttackSequence random_sequence(pdef::Rng& rng, std::size_t n, bool fixed_time, double t_max);

}  // namespace oracle
