#include "pdef/monotone_sweep.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace pdef {

void SpeedGridSpec::validate() const {
    if (g < 2) throw std::invalid_argument("speed grid needs g >= 2");
    if (!(v_min >= 0.0) || !(v_min < v_max)) {
        throw std::invalid_argument("speed grid needs 0 <= v_min < v_max");
    }
}

double SpeedGridSpec::speed(std::size_t k) const {
    return v_min + static_cast<double>(k + 1) * (v_max - v_min) / static_cast<double>(g);
}

std::vector<double> speed_grid(const SpeedGridSpec& spec) {
    spec.validate();
    std::vector<double> out(spec.g);
    for (std::size_t k = 0; k < spec.g; ++k) out[k] = spec.speed(k);
    return out;
}

double OptGrid::skip_fraction() const {
    const auto done = static_cast<double>(std::count(computed.begin(), computed.end(), std::uint8_t{1}));
    return 1.0 - done / static_cast<double>(computed.size());
}

std::vector<std::pair<std::size_t, std::size_t>> sweep_order(std::size_t g) {
    if (g < 2) throw std::invalid_argument("sweep_order: g must be at least 2");
    const std::size_t last = g - 1;
    std::size_t top = 1;
    while (top * 2 <= last) top *= 2;

    std::vector<std::uint8_t> seen(g * g, 0);
    std::vector<std::pair<std::size_t, std::size_t>> order;
    order.reserve(g * (g + 1) / 2);
    auto visit = [&](std::size_t i, std::size_t j) {
        if (i > j) std::swap(i, j);
        if (seen[i * g + j]) return;
        seen[i * g + j] = 1;
        order.emplace_back(i, j);
    };

    visit(0, 0);
    visit(0, last);
    visit(last, last);

    for (std::size_t p = top; p >= 1; p /= 2) {
        for (std::size_t k = 0; k <= last; k += p) visit(0, k);
        for (std::size_t k = 0; k <= last; k += p) visit(k, last);
    }
    for (std::size_t p = top; p >= 1; p /= 2) {
        for (std::size_t k = 0; k <= last; k += p) visit(k, k);
    }
    for (std::size_t p = top; p >= 1; p /= 2) {
        for (std::size_t i = 0; i <= last; i += p) {
            for (std::size_t j = i; j <= last; j += p) visit(i, j);
        }
    }
    return order;
}

namespace {

OptGrid empty_grid(const SpeedGridSpec& spec) {
    spec.validate();
    OptGrid grid;
    grid.spec = spec;
    grid.values.assign(spec.g * spec.g, 0);
    grid.computed.assign(spec.g * spec.g, 0);
    return grid;
}

std::int32_t solve_cell(const AttackSequence& attacks, const SpeedGridSpec& spec, std::size_t i,
                        std::size_t j, const DpOptions& options) {
    const SpeedVector v{spec.speed(i), spec.speed(j)};
    return static_cast<std::int32_t>(opt_dp(v, attacks, options).opt);
}

}  // namespace

OptGrid sweep(const AttackSequence& attacks, const SpeedGridSpec& spec, const DpOptions& options) {
    OptGrid grid = empty_grid(spec);
    if (attacks.empty()) throw std::invalid_argument("sweep: attack list is empty");
    const std::size_t g = spec.g;
    std::vector<std::uint8_t> known(g * g, 0);
    constexpr std::int32_t kNone = -1;

    auto set = [&](std::size_t i, std::size_t j, std::int32_t value, bool computed) {
        for (auto [r, c] : {std::pair{i, j}, std::pair{j, i}}) {
            grid.values[r * g + c] = value;
            known[r * g + c] = 1;
            grid.computed[r * g + c] = computed;
        }
    };

    for (auto [i, j] : sweep_order(g)) {
        // Slower neighbours bound from above, faster ones from below. Only the
        // nearest known cell on each side of the same row and column is used.
        std::int32_t upper = kNone;
        std::int32_t lower = kNone;
        auto take_upper = [&](std::int32_t v) { upper = upper == kNone ? v : std::min(upper, v); };
        auto take_lower = [&](std::int32_t v) { lower = lower == kNone ? v : std::max(lower, v); };

        for (std::size_t k = j; k-- > 0;) {
            if (known[i * g + k]) { take_upper(grid.values[i * g + k]); break; }
        }
        for (std::size_t k = j + 1; k < g; ++k) {
            if (known[i * g + k]) { take_lower(grid.values[i * g + k]); break; }
        }
        for (std::size_t k = i; k-- > 0;) {
            if (known[k * g + j]) { take_upper(grid.values[k * g + j]); break; }
        }
        for (std::size_t k = i + 1; k < g; ++k) {
            if (known[k * g + j]) { take_lower(grid.values[k * g + j]); break; }
        }

        if (upper != kNone && upper == lower) {
            set(i, j, upper, false);
        } else {
            set(i, j, solve_cell(attacks, spec, i, j, options), true);
            ++grid.dp_runs;
        }
    }

    check_grid_invariants(grid);
    return grid;
}

OptGrid naive_grid(const AttackSequence& attacks, const SpeedGridSpec& spec, const DpOptions& options) {
    OptGrid grid = empty_grid(spec);
    const std::size_t g = spec.g;
    for (std::size_t i = 0; i < g; ++i) {
        for (std::size_t j = 0; j < g; ++j) {
            grid.values[i * g + j] = solve_cell(attacks, spec, i, j, options);
            grid.computed[i * g + j] = 1;
            ++grid.dp_runs;
        }
    }
    return grid;
}

void check_grid_invariants(const OptGrid& grid) {
    const std::size_t g = grid.g();
    for (std::size_t i = 0; i < g; ++i) {
        for (std::size_t j = 0; j < g; ++j) {
            const auto v = grid.value(i, j);
            if (v != grid.value(j, i)) {
                throw std::logic_error("opt grid not symmetric at (" + std::to_string(i) + ", " +
                                       std::to_string(j) + ")");
            }
            if ((j + 1 < g && grid.value(i, j + 1) > v) || (i + 1 < g && grid.value(i + 1, j) > v)) {
                throw std::logic_error("opt grid increases past (" + std::to_string(i) + ", " +
                                       std::to_string(j) + ")");
            }
        }
    }
}

MeanGrid average_grids(std::span<const OptGrid> grids) {
    if (grids.empty()) throw std::invalid_argument("average_grids: no grids");
    MeanGrid mean;
    mean.spec = grids.front().spec;
    const std::size_t cells = mean.spec.g * mean.spec.g;
    mean.values.assign(cells, 0.0);
    mean.computed_fraction.assign(cells, 0.0);
    for (const auto& grid : grids) {
        if (!(grid.spec == mean.spec)) throw std::invalid_argument("average_grids: mixed grid specs");
        for (std::size_t c = 0; c < cells; ++c) {
            mean.values[c] += grid.values[c];
            mean.computed_fraction[c] += grid.computed[c];
        }
    }
    const auto t = static_cast<double>(grids.size());
    for (std::size_t c = 0; c < cells; ++c) {
        mean.values[c] /= t;
        mean.computed_fraction[c] /= t;
    }
    mean.trials = grids.size();
    return mean;
}

std::vector<BestMixPoint> best_mix(const MeanGrid& mean) {
    const SpeedGridSpec& spec = mean.spec;
    const std::size_t g = spec.g;
    const double step = (spec.v_max - spec.v_min) / static_cast<double>(g);
    std::vector<BestMixPoint> out;
    for (std::size_t s = 0; s + 2 <= 2 * g; ++s) {
        // slower defender index j, faster i = s - j, with j <= i < g
        const std::size_t j_lo = s > g - 1 ? s - (g - 1) : 0;
        const std::size_t j_hi = s / 2;
        if (j_hi < j_lo || j_hi - j_lo + 1 < 2) continue;

        std::size_t best_j = j_lo;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = j_lo; j <= j_hi; ++j) {
            const double v = mean.value(s - j, j);
            if (v <= best) {
                best = v;
                best_j = j;
            }
        }
        const double v2 = spec.speed(best_j);
        const double v1 = spec.speed(s - best_j);
        out.push_back({2.0 * spec.v_min + static_cast<double>(s + 2) * step, v2 / (v1 + v2), s});
    }
    return out;
}

}  // namespace pdef
