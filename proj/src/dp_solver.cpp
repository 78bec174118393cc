#include "pdef/dp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace pdef {

SpeedVector::SpeedVector(std::vector<double> speeds) : speeds_(std::move(speeds)) {
    for (double s : speeds_) {
        if (!(s > 0.0) || !std::isfinite(s)) {
            throw std::invalid_argument("defender speeds must be positive and finite");
        }
    }
    std::sort(speeds_.begin(), speeds_.end(), std::greater<>());
}

std::size_t DefensePlan::thwarted() const {
    std::size_t total = 0;
    for (const auto& l : lists) total += l.size();
    return total;
}

bool indicator(const SpeedVector& v, const AttackSequence& attacks, std::size_t i,
               std::size_t j_prev, std::size_t j_next) {
    if (j_prev == 0) return true;
    const Attack& a = attacks[j_prev - 1];
    const Attack& b = attacks[j_next - 1];
    return dist(a.location, b.location) <= v[i] * (b.time - a.time);
}

namespace {

// Dense table over j in {0..n}^m, lexicographic layout (defender 0 most significant).
template <typename Value>
struct DpTable {
    std::size_t n = 0;
    std::size_t m = 0;
    std::vector<std::uint64_t> stride;
    std::vector<Value> f;
    std::vector<std::int32_t> j_star;
    std::vector<std::uint8_t> i_star;
    std::vector<std::uint8_t> unique_max;
};

std::uint64_t table_entries(std::size_t n, std::size_t m, std::uint64_t cap) {
    std::uint64_t entries = 1;
    for (std::size_t i = 0; i < m; ++i) {
        if (entries > cap / (n + 1)) {
            throw CapacityError("DP table (" + std::to_string(n + 1) + ")^" + std::to_string(m) +
                                " exceeds cap of " + std::to_string(cap) + " entries");
        }
        entries *= (n + 1);
    }
    if (entries > cap) {
        throw CapacityError("DP table exceeds cap of " + std::to_string(cap) + " entries");
    }
    return entries;
}

template <typename Value>
struct Solved {
    Value best;
    DefensePlan plan;
};

template <typename Value>
Solved<Value> run_dp(const SpeedVector& v, const AttackSequence& attacks, std::span<const Value> damage,
                     const DpOptions& options) {
    const std::size_t n = attacks.size();
    const std::size_t m = v.size();
    if (n == 0) throw std::invalid_argument("opt_dp: attack list is empty");
    if (m == 0) throw std::invalid_argument("opt_dp: need at least one defender");
    if (m > 255) throw std::invalid_argument("opt_dp: too many defenders");

    const std::uint64_t entries = table_entries(n, m, options.max_table_entries);

    // reach[(i * (n + 1) + j_prev) * (n + 1) + j_next]
    std::vector<std::uint8_t> reach(m * (n + 1) * (n + 1), 0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t jn = 1; jn <= n; ++jn) {
            reach[(i * (n + 1) + 0) * (n + 1) + jn] =
                options.start_reachable ? options.start_reachable(i, jn) : 1;
            for (std::size_t jp = 1; jp < jn; ++jp) {
                reach[(i * (n + 1) + jp) * (n + 1) + jn] = indicator(v, attacks, i, jp, jn);
            }
        }
    }

    DpTable<Value> t;
    t.n = n;
    t.m = m;
    t.stride.assign(m, 1);
    for (std::size_t i = m - 1; i-- > 0;) t.stride[i] = t.stride[i + 1] * (n + 1);
    t.f.assign(entries, Value{});
    t.j_star.assign(entries, 0);
    t.i_star.assign(entries, 0);
    t.unique_max.assign(entries, 0);

    const Value total = std::accumulate(damage.begin(), damage.end(), Value{});
    constexpr Value kInf = std::numeric_limits<Value>::max();
    t.f[0] = total;
    Value best = total;
    std::uint64_t best_idx = 0;

    std::vector<std::size_t> j(m, 0);
    for (std::uint64_t idx = 1; idx < entries; ++idx) {
        // odometer increment, last coordinate fastest
        for (std::size_t i = m; i-- > 0;) {
            if (++j[i] <= n) break;
            j[i] = 0;
        }

        // i* = smallest index attaining the maximum
        std::size_t i_star = 0;
        for (std::size_t i = 1; i < m; ++i) {
            if (j[i] > j[i_star]) i_star = i;
        }
        std::size_t ties = 0;
        for (std::size_t i = 0; i < m; ++i) ties += (j[i] == j[i_star]);

        const std::size_t j_max = j[i_star];
        const std::uint64_t base = idx - j_max * t.stride[i_star];
        const std::uint8_t* row = &reach[(i_star * (n + 1)) * (n + 1) + j_max];

        Value min_val = kInf;
        std::size_t arg = 0;
        for (std::size_t jp = 0; jp < j_max; ++jp) {
            if (!row[jp * (n + 1)]) continue;
            const Value cand = t.f[base + jp * t.stride[i_star]];
            if (cand < min_val) {
                min_val = cand;
                arg = jp;
            }
        }

        const bool unique = ties == 1;
        const Value value = unique ? min_val - damage[j_max - 1] : min_val;
        t.f[idx] = value;
        t.j_star[idx] = static_cast<std::int32_t>(arg);
        t.i_star[idx] = static_cast<std::uint8_t>(i_star);
        t.unique_max[idx] = unique;
        if (value < best) {
            best = value;
            best_idx = idx;
        }
    }

    // Walk back from the minimizing state. An attack is credited to defender i*
    // only where i* is its unique latest holder, so each index lands in one list.
    Solved<Value> out{best, {}};
    out.plan.lists.assign(m, {});
    std::vector<std::size_t> cur(m);
    {
        std::uint64_t rem = best_idx;
        for (std::size_t i = 0; i < m; ++i) {
            cur[i] = rem / t.stride[i];
            rem %= t.stride[i];
        }
    }
    std::uint64_t idx = best_idx;
    while (idx != 0) {
        const std::size_t is = t.i_star[idx];
        const std::size_t js = static_cast<std::size_t>(t.j_star[idx]);
        if (t.unique_max[idx]) out.plan.lists[is].push_back(cur[is]);
        idx -= (cur[is] - js) * t.stride[is];
        cur[is] = js;
    }
    for (auto& l : out.plan.lists) std::reverse(l.begin(), l.end());
    return out;
}

struct BruteForce {
    const SpeedVector& v;
    const AttackSequence& attacks;
    std::span<const double> weights;
    std::vector<std::size_t> last;  // 1-based attack index per defender, 0 = none
    double best = std::numeric_limits<double>::infinity();

    void search(std::size_t j, double breached) {
        if (breached >= best) return;
        if (j == attacks.size()) {
            best = breached;
            return;
        }
        const std::size_t idx = j + 1;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!indicator(v, attacks, i, last[i], idx)) continue;
            const std::size_t saved = last[i];
            last[i] = idx;
            search(j + 1, breached);
            last[i] = saved;
        }
        search(j + 1, breached + weights[j]);
    }
};

void check_bruteforce_domain(const SpeedVector& v, const AttackSequence& attacks) {
    if (attacks.empty()) throw std::invalid_argument("opt_bruteforce: attack list is empty");
    if (v.size() == 0) throw std::invalid_argument("opt_bruteforce: need at least one defender");
    if (attacks.size() > 12 || v.size() > 3) {
        throw std::invalid_argument("opt_bruteforce: limited to n <= 12 and m <= 3");
    }
}

void check_weights(const AttackSequence& attacks, std::span<const double> weights) {
    if (weights.size() != attacks.size()) {
        throw std::invalid_argument("weights length " + std::to_string(weights.size()) +
                                    " does not match " + std::to_string(attacks.size()) + " attacks");
    }
    for (double w : weights) {
        if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("weights must be positive");
    }
}

}  // namespace

DpResult opt_dp(const SpeedVector& v, const AttackSequence& attacks, const DpOptions& options) {
    const std::vector<std::int32_t> unit(attacks.size(), 1);
    auto solved = run_dp<std::int32_t>(v, attacks, unit, options);
    return {solved.best, std::move(solved.plan)};
}

WeightedDpResult opt_dp_weighted(const SpeedVector& v, const AttackSequence& attacks,
                                 std::span<const double> weights, const DpOptions& options) {
    check_weights(attacks, weights);
    auto solved = run_dp<double>(v, attacks, weights, options);
    // Report the plan's damage summed in index order rather than the table's
    // subtraction chain, so equal plans give bit-equal damage.
    std::vector<bool> thwarted(attacks.size(), false);
    for (const auto& l : solved.plan.lists) {
        for (std::size_t j : l) thwarted[j - 1] = true;
    }
    double damage = 0.0;
    for (std::size_t j = 0; j < attacks.size(); ++j) {
        if (!thwarted[j]) damage += weights[j];
    }
    return {damage, std::move(solved.plan)};
}

std::size_t verify_plan(const SpeedVector& v, const AttackSequence& attacks, const DefensePlan& plan) {
    const std::size_t n = attacks.size();
    if (plan.lists.size() > v.size()) {
        throw PlanError(plan.lists.size(), 0, 0, "plan has more lists than defenders");
    }
    std::vector<bool> used(n + 1, false);
    for (std::size_t i = 0; i < plan.lists.size(); ++i) {
        std::size_t prev = 0;
        for (std::size_t j : plan.lists[i]) {
            if (j == 0 || j > n) {
                throw PlanError(i + 1, prev, j, "attack index " + std::to_string(j) + " out of range");
            }
            if (used[j]) {
                throw PlanError(i + 1, prev, j, "attack " + std::to_string(j) + " assigned twice");
            }
            if (prev != 0 && j <= prev) {
                throw PlanError(i + 1, prev, j, "defender " + std::to_string(i + 1) +
                                                    " list is not strictly increasing");
            }
            if (!indicator(v, attacks, i, prev, j)) {
                throw PlanError(i + 1, prev, j,
                                "defender " + std::to_string(i + 1) + " cannot reach attack " +
                                    std::to_string(j) + " after attack " + std::to_string(prev));
            }
            used[j] = true;
            prev = j;
        }
    }
    return n - plan.thwarted();
}

std::int64_t opt_bruteforce(const SpeedVector& v, const AttackSequence& attacks) {
    check_bruteforce_domain(v, attacks);
    const std::vector<double> unit(attacks.size(), 1.0);
    BruteForce bf{v, attacks, unit, std::vector<std::size_t>(v.size(), 0)};
    bf.search(0, 0.0);
    return static_cast<std::int64_t>(bf.best);
}

double opt_bruteforce_weighted(const SpeedVector& v, const AttackSequence& attacks,
                               std::span<const double> weights) {
    check_bruteforce_domain(v, attacks);
    check_weights(attacks, weights);
    BruteForce bf{v, attacks, weights, std::vector<std::size_t>(v.size(), 0)};
    bf.search(0, 0.0);
    return bf.best;
}

}  // namespace pdef
