#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "pdef/geometry.hpp"

namespace pdef {

enum class Setting { uniform_time, fixed_time, adversarial };

std::string_view to_string(Setting setting);
Setting parse_setting(std::string_view text);

struct Attack {
    PerimeterPoint location;
    double time = 0.0;
};

// Time-sorted (non-decreasing) attack list. Ties keep insertion order.
class AttackSequence {
public:
    AttackSequence() = default;
    // Stable-sorts by time; throws on negative or non-finite times.
    AttackSequence(std::vector<Attack> attacks, Setting setting);

    std::span<const Attack> attacks() const { return attacks_; }
    const Attack& operator[](std::size_t j) const { return attacks_[j]; }
    std::size_t size() const { return attacks_.size(); }
    bool empty() const { return attacks_.empty(); }
    Setting setting() const { return setting_; }

    // Same attacks in reverse time order, times remapped t -> t_first + t_last - t.
    AttackSequence reversed() const;
    // Every location replaced by its mirror image -z.
    AttackSequence negated() const;

private:
    std::vector<Attack> attacks_;
    Setting setting_ = Setting::uniform_time;
};

// Locations i.i.d. uniform, times i.i.d. uniform on [0, t_max], sorted by time.
AttackSequence gen_uniform(std::size_t n, double t_max, std::uint64_t seed);

// Attack j (1-based) at time exactly j, locations i.i.d. uniform.
AttackSequence gen_fixed(std::size_t n, std::uint64_t seed);

// Six-attack pattern at times 1..6 that no pair (v1, v2) with v1 < 1/2 and
// v1 + 3 v2 < 1 can fully defend. Throws std::invalid_argument outside that regime
// or when eps is too large for the gaps to stay open.
AttackSequence breach_sequence(double v1, double v2, double eps);

// The same six locations without any precondition checks; used to probe
// pairs inside the perfect-defense regime.
AttackSequence adversarial_pattern(double v1, double v2, double eps);

}  // namespace pdef
