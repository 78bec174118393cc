#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pdef/attacks.hpp"
#include "pdef/dp_solver.hpp"

namespace pdef {

// g evenly spaced speeds in (v_min, v_max]; index k (0-based) maps to
// v_min + (k + 1) * (v_max - v_min) / g.
struct SpeedGridSpec {
    double v_min = 0.0;
    double v_max = 0.6;
    std::size_t g = 32;

    void validate() const;
    double speed(std::size_t k) const;

    friend bool operator==(const SpeedGridSpec&, const SpeedGridSpec&) = default;
};

std::vector<double> speed_grid(const SpeedGridSpec& spec);

// opt over a g x g speed grid for two defenders. Cell (i, j) holds
// opt((speed(i), speed(j))), row-major.
struct OptGrid {
    SpeedGridSpec spec;
    std::vector<std::int32_t> values;
    std::vector<std::uint8_t> computed;  // 1 where the DP was actually run (mirrored)
    std::size_t dp_runs = 0;

    std::size_t g() const { return spec.g; }
    std::int32_t value(std::size_t i, std::size_t j) const { return values[i * spec.g + j]; }
    bool was_computed(std::size_t i, std::size_t j) const { return computed[i * spec.g + j] != 0; }
    // 1 - (computed cells) / g^2
    double skip_fraction() const;
};

struct MeanGrid {
    SpeedGridSpec spec;
    std::vector<double> values;
    std::vector<double> computed_fraction;
    std::size_t trials = 0;

    double value(std::size_t i, std::size_t j) const { return values[i * spec.g + j]; }
};

struct BestMixPoint {
    double v_tot = 0.0;
    double ratio = 0.0;
    std::size_t anti_diagonal = 0;  // i + j of the cells on this v_tot
};

// Upper-triangle cells (i <= j) in evaluation order: corners, then edges
// (row 0, column g-1) and the main diagonal by decreasing powers of two, then
// every remaining cell by decreasing level, lexicographic within a level.
std::vector<std::pair<std::size_t, std::size_t>> sweep_order(std::size_t g);

// Bit-identical to running opt_dp on every cell, skipping DP calls where
// monotonicity already pins the value.
OptGrid sweep(const AttackSequence& attacks, const SpeedGridSpec& spec, const DpOptions& options = {});

// Reference: opt_dp on every one of the g^2 cells.
OptGrid naive_grid(const AttackSequence& attacks, const SpeedGridSpec& spec, const DpOptions& options = {});

// Throws std::logic_error unless values are symmetric and non-increasing along rows and columns.
void check_grid_invariants(const OptGrid& grid);

MeanGrid average_grids(std::span<const OptGrid> grids);

// For each anti-diagonal with at least two cells satisfying v2 <= v_tot / 2,
// the fraction v2* / v_tot minimizing the mean; ties go to the larger v2.
std::vector<BestMixPoint> best_mix(const MeanGrid& mean);

}  // namespace pdef
