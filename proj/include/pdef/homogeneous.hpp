#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pdef/attacks.hpp"

namespace pdef {

// Reachability DAG over attacks (0-based nodes in time order). Edge j -> k
// (j < k) iff one defender of speed v can thwart j and then k.
struct AttackDag {
    std::size_t n = 0;
    std::vector<std::vector<std::size_t>> out;

    std::size_t edge_count() const;
    bool has_edge(std::size_t from, std::size_t to) const;
};

// Left vertices are out-copies, right vertices in-copies.
struct BipartiteGraph {
    std::size_t n_left = 0;
    std::size_t n_right = 0;
    std::vector<std::vector<std::size_t>> adj;  // left -> sorted right neighbours
};

struct Matching {
    std::size_t size = 0;
    std::vector<long> match_left;   // right partner or -1
    std::vector<long> match_right;  // left partner or -1
};

struct PathCover {
    std::size_t defenders = 0;
    std::vector<std::vector<std::size_t>> paths;  // 1-based attack indices, time order
};

struct AlphaPoint {
    double v = 0.0;
    double mean_m = 0.0;
};

struct AlphaFit {
    double alpha = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::size_t points_used = 0;
    std::size_t points_dropped = 0;
};

AttackDag build_dag(const AttackSequence& attacks, double v);
BipartiteGraph split_graph(const AttackDag& dag);

// Hopcroft-Karp, O(sqrt(V) E). Ties resolved toward smaller vertex indices.
Matching hopcroft_karp(const BipartiteGraph& graph);
std::size_t max_matching(const BipartiteGraph& graph);

// Fewest speed-v defenders thwarting every attack, with one itinerary each.
PathCover min_path_cover(const AttackSequence& attacks, double v);
std::size_t min_defenders(const AttackSequence& attacks, double v);

// Least-squares slope of log(mean_m - 1) on log(v); alpha = -slope.
// Points with mean_m <= 1 are dropped. Throws with fewer than 3 usable points.
AlphaFit alpha_estimate(std::span<const AlphaPoint> points);

}  // namespace pdef
