#pragma once

#include <array>
#include <cstdint>

namespace pdef {

// SplitMix64 finalizer (Steele, Lea, Flood 2014).
std::uint64_t mix64(std::uint64_t x);

// Seed for trial `index` of a run; depends only on (master_seed, index).
std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t index);

// xoshiro256** 1.0 (Blackman, Vigna), state expanded from a 64-bit seed by SplitMix64.
// Output is identical across platforms; no std:: distributions are used downstream.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed);

    std::uint64_t next();
    std::uint64_t operator()() { return next(); }
    static constexpr std::uint64_t min() { return 0; }
    static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

    // 53-bit uniform on [0, 1).
    double uniform01();
    // Uniform location on the unit circle, in [-1/2, 1/2).
    double uniform_location();

private:
    std::array<std::uint64_t, 4> s_{};
};

}  // namespace pdef
