#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdef/attacks.hpp"

namespace pdef {

// Defender speeds, kept sorted non-increasing (v1 >= v2 >= ... > 0).
class SpeedVector {
public:
    SpeedVector() = default;
    explicit SpeedVector(std::vector<double> speeds);
    SpeedVector(std::initializer_list<double> speeds) : SpeedVector(std::vector<double>(speeds)) {}

    std::size_t size() const { return speeds_.size(); }
    double operator[](std::size_t i) const { return speeds_[i]; }
    std::span<const double> speeds() const { return speeds_; }

private:
    std::vector<double> speeds_;
};

// lists[i] holds the 1-based attack indices defender i thwarts, in time order.
struct DefensePlan {
    std::vector<std::vector<std::size_t>> lists;

    std::size_t thwarted() const;
};

// Table would exceed the configured entry cap.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A defense plan asks some defender to cover an unreachable consecutive pair
// (or is otherwise malformed). prev == 0 marks a structural problem.
class PlanError : public std::runtime_error {
public:
    PlanError(std::size_t defender, std::size_t prev, std::size_t next, const std::string& what)
        : std::runtime_error(what), defender(defender), prev(prev), next(next) {}

    std::size_t defender;
    std::size_t prev;
    std::size_t next;
};

struct DpOptions {
    // Default refuses tables with more than 2^31 entries.
    std::uint64_t max_table_entries = std::uint64_t{1} << 31;
    // Hook for a restricted start: (defender, attack) -> can the defender be at that
    // attack coming from its start. Empty means defenders start anywhere.
    std::function<bool(std::size_t defender, std::size_t attack)> start_reachable;
};

struct DpResult {
    std::int64_t opt = 0;
    DefensePlan plan;
};

struct WeightedDpResult {
    double damage = 0.0;
    DefensePlan plan;
};

// Can defender i (0-based) thwart attack j_next (1-based) right after j_prev?
// j_prev == 0 means "no earlier attack": always true with a free start.
bool indicator(const SpeedVector& v, const AttackSequence& attacks, std::size_t i,
               std::size_t j_prev, std::size_t j_next);

// Exact minimum number of breaches and a plan achieving it.
DpResult opt_dp(const SpeedVector& v, const AttackSequence& attacks, const DpOptions& options = {});

// Minimum total damage of breached attacks, attack j doing weights[j] damage.
// The reported damage is the plan's breached weights summed in index order.
WeightedDpResult opt_dp_weighted(const SpeedVector& v, const AttackSequence& attacks,
                                 std::span<const double> weights, const DpOptions& options = {});

// Checks plan feasibility; returns number of breached attacks. Throws PlanError.
std::size_t verify_plan(const SpeedVector& v, const AttackSequence& attacks, const DefensePlan& plan);

// Exhaustive search over assignments of attacks to defenders (or breach).
// Limited to n <= 12, m <= 3.
std::int64_t opt_bruteforce(const SpeedVector& v, const AttackSequence& attacks);
double opt_bruteforce_weighted(const SpeedVector& v, const AttackSequence& attacks,
                               std::span<const double> weights);

}  // namespace pdef
