#include "pdef/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pdef/rng.hpp"

namespace pdef {

std::string_view to_string(Setting setting) {
    switch (setting) {
        case Setting::uniform_time: return "uniform";
        case Setting::fixed_time: return "fixed";
        case Setting::adversarial: return "adversarial";
    }
    return "unknown";
}

Setting parse_setting(std::string_view text) {
    if (text == "uniform") return Setting::uniform_time;
    if (text == "fixed") return Setting::fixed_time;
    if (text == "adversarial") return Setting::adversarial;
    throw std::invalid_argument("unknown setting: " + std::string(text));
}

AttackSequence::AttackSequence(std::vector<Attack> attacks, Setting setting)
    : attacks_(std::move(attacks)), setting_(setting) {
    for (const auto& a : attacks_) {
        if (!std::isfinite(a.time) || a.time < 0.0) {
            throw std::invalid_argument("attack time must be finite and non-negative");
        }
    }
    std::stable_sort(attacks_.begin(), attacks_.end(),
                     [](const Attack& x, const Attack& y) { return x.time < y.time; });
}

AttackSequence AttackSequence::reversed() const {
    std::vector<Attack> out;
    out.reserve(attacks_.size());
    if (!attacks_.empty()) {
        const double span = attacks_.front().time + attacks_.back().time;
        for (auto it = attacks_.rbegin(); it != attacks_.rend(); ++it) {
            out.push_back({it->location, span - it->time});
        }
    }
    return AttackSequence(std::move(out), setting_);
}

AttackSequence AttackSequence::negated() const {
    std::vector<Attack> out;
    out.reserve(attacks_.size());
    for (const auto& a : attacks_) {
        out.push_back({PerimeterPoint(-a.location.coordinate()), a.time});
    }
    return AttackSequence(std::move(out), setting_);
}

AttackSequence gen_uniform(std::size_t n, double t_max, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("gen_uniform: n must be at least 1");
    if (!(t_max > 0.0)) throw std::invalid_argument("gen_uniform: t_max must be positive");
    Rng rng(seed);
    std::vector<Attack> attacks;
    attacks.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double location = rng.uniform_location();
        const double time = rng.uniform01() * t_max;
        attacks.push_back({PerimeterPoint(location), time});
    }
    return AttackSequence(std::move(attacks), Setting::uniform_time);
}

AttackSequence gen_fixed(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("gen_fixed: n must be at least 1");
    Rng rng(seed);
    std::vector<Attack> attacks;
    attacks.reserve(n);
    for (std::size_t j = 1; j <= n; ++j) {
        attacks.push_back({PerimeterPoint(rng.uniform_location()), static_cast<double>(j)});
    }
    return AttackSequence(std::move(attacks), Setting::fixed_time);
}

AttackSequence adversarial_pattern(double v1, double v2, double eps) {
    const double outer = v1 + v2 + 2.0 * eps;
    const double inner = v2 + eps;
    const double z[6] = {outer - 0.25, inner - 0.25, -0.25, 0.25, 0.25 - inner, 0.25 - outer};
    std::vector<Attack> attacks;
    attacks.reserve(6);
    for (int j = 0; j < 6; ++j) {
        attacks.push_back({PerimeterPoint(z[j]), static_cast<double>(j + 1)});
    }
    return AttackSequence(std::move(attacks), Setting::adversarial);
}

AttackSequence breach_sequence(double v1, double v2, double eps) {
    if (!(v2 > 0.0) || v1 < v2) {
        throw std::invalid_argument("breach_sequence: need v1 >= v2 > 0");
    }
    if (!(v1 < 0.5) || !(v1 + 3.0 * v2 < 1.0)) {
        throw std::invalid_argument(
            "breach_sequence: pair is in the perfect-defense regime (v1 >= 1/2 or v1 + 3 v2 >= 1)");
    }
    const double eps_max = std::min((1.0 - (v1 + 3.0 * v2)) / 2.0, (0.5 - v1) / 2.0);
    if (!(eps > 0.0) || !(eps < eps_max)) {
        throw std::invalid_argument("breach_sequence: eps must lie in (0, " +
                                    std::to_string(eps_max) + ")");
    }
    return adversarial_pattern(v1, v2, eps);
}

}  // namespace pdef
