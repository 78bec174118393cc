#include "pdef/unit_horizon.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pdef/geometry.hpp"
#include "pdef/rng.hpp"

namespace pdef {

void DefenderPair::validate() const {
    if (!(v2 > 0.0) || v1 < v2 || !std::isfinite(v1)) {
        throw std::invalid_argument("defender pair needs v1 >= v2 > 0");
    }
}

double coverage(double a, const DefenderPair& pair) {
    const double v1 = pair.v1;
    const double v2 = pair.v2;
    if (a <= v1 - v2) return std::min(2.0 * v1, 1.0);
    return std::min({v1 + v2 + a, 2.0 * (v1 + v2), 1.0});
}

namespace {

// Position reached by moving `budget` from `from` directly away from `x`,
// stopping at the antipode of x.
double flee(double from, double x, double budget) {
    const double offset = wrap(from - x);
    const double room = 0.5 - std::fabs(offset);
    const double move = std::min(budget, room);
    return wrap(from + (offset < 0.0 ? -move : move));
}

}  // namespace

Transition step(double a, double x, const DefenderPair& pair) {
    const double v1 = pair.v1;
    const double v2 = pair.v2;
    x = wrap(x);
    const double d1 = dist(0.0, x);
    const double d2 = dist(a, x);
    const bool first_can = d1 <= v1;
    const bool second_can = d2 <= v2;

    Transition out;
    if (!first_can && !second_can) {
        out.a_next = std::min(0.5, a + v1 + v2);
        const double gap = out.a_next - a;
        const double back = std::min(v1, gap);
        out.pos1 = wrap(-back);
        out.pos2 = wrap(a + (gap - back));
        return out;
    }

    out.reward = 1;
    const double by_first = first_can ? std::min(0.5, d2 + v2) : -1.0;
    const double by_second = second_can ? std::min(0.5, d1 + v1) : -1.0;
    if (by_first >= by_second) {
        out.capturer = Capturer::first;
        out.a_next = by_first;
        out.pos1 = x;
        out.pos2 = flee(a, x, v2);
    } else {
        out.capturer = Capturer::second;
        out.a_next = by_second;
        out.pos1 = flee(0.0, x, v1);
        out.pos2 = x;
    }
    return out;
}

std::size_t simulate(const DefenderPair& pair, std::size_t n, double a0, std::uint64_t seed) {
    pair.validate();
    if (n == 0) throw std::invalid_argument("simulate: n must be at least 1");
    if (!(a0 >= 0.0 && a0 <= 0.5)) throw std::invalid_argument("simulate: a0 must lie in [0, 1/2]");
    Rng rng(seed);
    UnitHorizonState state{a0, n};
    std::size_t thwarted = 0;
    while (state.remaining > 0) {
        const Transition tr = step(state.a, rng.uniform_location(), pair);
        thwarted += static_cast<std::size_t>(tr.reward);
        state.a = tr.a_next;
        --state.remaining;
    }
    return thwarted;
}

ThwartEstimate estimate_thwarted(const DefenderPair& pair, std::size_t n, double a0, std::size_t trials,
                                 std::uint64_t master_seed) {
    if (trials == 0) throw std::invalid_argument("estimate_thwarted: need at least one trial");
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto k = static_cast<double>(simulate(pair, n, a0, trial_seed(master_seed, t)));
        sum += k;
        sum_sq += k * k;
    }
    const auto count = static_cast<double>(trials);
    ThwartEstimate out;
    out.trials = trials;
    out.mean = sum / count;
    if (trials > 1) {
        const double var = std::max(0.0, (sum_sq - count * out.mean * out.mean) / (count - 1.0));
        out.std_error = std::sqrt(var / count);
    }
    return out;
}

GreedyRun run_greedy(const DefenderPair& pair, const AttackSequence& attacks, double start1, double start2) {
    pair.validate();
    double p1 = wrap(start1);
    double p2 = wrap(start2);
    GreedyRun out;
    double now = 0.0;
    for (const Attack& attack : attacks.attacks()) {
        if (attack.time != now + 1.0) {
            throw std::invalid_argument("run_greedy: attacks must arrive at times 1, 2, ..., n");
        }
        now = attack.time;
        const CanonicalPair canon = canonicalize_pair(PerimeterPoint(p1), PerimeterPoint(p2));
        const double x = canon.frame.to_canonical(attack.location.coordinate());
        const Transition tr = step(canon.separation, x, pair);
        if (tr.reward) {
            ++out.thwarted;
        } else {
            ++out.breached;
        }
        p1 = canon.frame.to_raw(tr.pos1);
        p2 = canon.frame.to_raw(tr.pos2);
    }
    return out;
}

bool perfect_defense(const DefenderPair& pair) {
    return pair.v1 >= 0.5 || pair.v1 + 3.0 * pair.v2 >= 1.0;
}

CaptureBound capture_bound(const DefenderPair& pair) {
    const double v1 = pair.v1;
    const double v2 = pair.v2;
    CaptureBound out;
    out.w = std::min({1.0 - 2.0 * v1, 1.0 - v1 - 3.0 * v2, 2.0 * v2, v1 - v2});
    if (perfect_defense(pair)) {
        out.unbounded = true;
        return out;
    }
    if (out.w <= 0.0) {
        out.vacuous = true;
        return out;
    }
    out.n_threshold = static_cast<std::uint64_t>(std::floor(1.0 / out.w));
    return out;
}

bool full_coverage_check(double a, const DefenderPair& pair) {
    return a >= 1.0 - (pair.v1 + pair.v2);
}

}  // namespace pdef
