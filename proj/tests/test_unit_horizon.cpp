#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pdef/dp_solver.hpp"
#include "pdef/rng.hpp"
#include "pdef/unit_horizon.hpp"

using namespace pdef;

TEST_CASE("coverage") {
    CHECK(coverage(0.3, {0.2, 0.1}) == doctest::Approx(0.6));
    CHECK(coverage(0.5, {0.4, 0.3}) == 1.0);
    CHECK(coverage(0.0, {0.1, 0.1}) == doctest::Approx(0.2));
    // nested arcs: the slow arc sits inside the fast one
    CHECK(coverage(0.05, {0.3, 0.1}) == doctest::Approx(0.6));
    CHECK(coverage(0.1, {0.2, 0.05}) == doctest::Approx(0.4));
    // partial overlap
    CHECK(coverage(0.1, {0.1, 0.1}) == doctest::Approx(0.3));
}

TEST_CASE("coverage matches a direct measurement of the arc union") {
    Rng rng(12);
    for (int k = 0; k < 200; ++k) {
        const double v2 = 0.3 * rng.uniform01() + 1e-3;
        const double v1 = v2 + 0.4 * rng.uniform01();
        const double a = 0.5 * rng.uniform01();
        const int samples = 20000;
        int hits = 0;
        for (int s = 0; s < samples; ++s) {
            const double x = -0.5 + (s + 0.5) / samples;
            if (oracle::arc_dist(0.0, x) <= v1 || oracle::arc_dist(a, x) <= v2) ++hits;
        }
        CAPTURE(v1);
        CAPTURE(v2);
        CAPTURE(a);
        CHECK(std::fabs(coverage(a, {v1, v2}) - static_cast<double>(hits) / samples) <= 4.0 / samples);
    }
}

TEST_CASE("step examples") {
    SUBCASE("attack on defender 1, defender 2 flees") {
        const auto tr = step(0.3, 0.0, {0.2, 0.1});
        CHECK(tr.reward == 1);
        CHECK(tr.capturer == Capturer::first);
        CHECK(tr.a_next == doctest::Approx(0.4));
    }
    SUBCASE("out of reach of both") {
        const auto tr = step(0.5, 0.25, {0.1, 0.1});
        CHECK(tr.reward == 0);
        CHECK(tr.capturer == Capturer::none);
        CHECK(tr.a_next == 0.5);
    }
    SUBCASE("both can capture; the choice leaving the wider gap wins") {
        const auto tr = step(0.2, 0.25, {0.3, 0.1});
        CHECK(tr.reward == 1);
        CHECK(tr.capturer == Capturer::second);
        CHECK(tr.a_next == 0.5);
    }
    SUBCASE("drift toward the antipode when nothing is capturable") {
        const auto tr = step(0.1, 0.35, {0.1, 0.05});
        CHECK(tr.reward == 0);
        CHECK(tr.a_next == doctest::Approx(0.25));
    }
}

TEST_CASE("step agrees with an exhaustive one-step search and is feasible") {
    Rng rng(77);
    const std::size_t resolution = 1000;
    for (int k = 0; k < 400; ++k) {
        const double v2 = 0.01 + 0.25 * rng.uniform01();
        const double v1 = v2 + (0.5 - v2) * rng.uniform01();
        const DefenderPair pair{v1, v2};
        const double a = 0.5 * rng.uniform01();
        const double x = rng.uniform_location();
        const auto tr = step(a, x, pair);
        const auto brute = oracle::step_bruteforce(a, x, pair, resolution);
        CAPTURE(k);
        CHECK((tr.reward == 1) == brute.capture);
        CHECK(tr.a_next >= brute.best_separation - 1e-12);
        CHECK(tr.a_next <= brute.best_separation + 2.0 * v1 / resolution + 1e-12);
        CHECK(oracle::arc_dist(0.0, tr.pos1) <= v1 + 1e-12);
        CHECK(oracle::arc_dist(a, tr.pos2) <= v2 + 1e-12);
        CHECK(oracle::arc_dist(tr.pos1, tr.pos2) == doctest::Approx(tr.a_next).epsilon(1e-9));
        if (tr.capturer == Capturer::first) CHECK(oracle::arc_dist(tr.pos1, x) <= 1e-12);
        if (tr.capturer == Capturer::second) CHECK(oracle::arc_dist(tr.pos2, x) <= 1e-12);
    }
}

TEST_CASE("simulate") {
    CHECK(simulate({0.5, 0.01}, 25, 0.5, 3) == 25);
    CHECK(simulate({0.25, 0.25}, 25, 0.5, 3) == 25);
    CHECK(simulate({0.4, 0.2}, 40, 0.5, 9) == 40);
    CHECK_THROWS_AS(simulate({0.3, 0.2}, 0, 0.5, 1), std::invalid_argument);
    CHECK_THROWS_AS(simulate({0.3, 0.2}, 5, 0.6, 1), std::invalid_argument);
    CHECK_THROWS_AS(simulate({0.1, 0.2}, 5, 0.5, 1), std::invalid_argument);

    // Slow defenders never interfere: each attack is captured with probability 2(v1 + v2).
    const DefenderPair slow{0.02, 0.01};
    const auto est = estimate_thwarted(slow, 25, 0.5, 4000, 5);
    CHECK(std::fabs(est.mean - 25 * 0.06) <= 4.0 * est.std_error);
    CHECK(est.trials == 4000);
}

TEST_CASE("one-step value equals coverage") {
    Rng rng(3);
    for (int k = 0; k < 5; ++k) {
        const double v2 = 0.02 + 0.2 * rng.uniform01();
        const double v1 = v2 + (0.45 - v2) * rng.uniform01();
        const double a = 0.5 * rng.uniform01();
        const auto est = estimate_thwarted({v1, v2}, 1, a, 20000, rng.next());
        CHECK(std::fabs(est.mean - coverage(a, {v1, v2})) <= 4.0 * est.std_error);
    }
}

TEST_CASE("perfect_defense and full coverage") {
    CHECK(perfect_defense({0.5, 0.01}));
    CHECK(perfect_defense({0.25, 0.25}));
    CHECK(perfect_defense({0.4, 0.2}));
    CHECK_FALSE(perfect_defense({0.3, 0.2}));
    CHECK_FALSE(perfect_defense({0.49, 0.16}));

    CHECK(full_coverage_check(0.5, {0.3, 0.2}));
    CHECK_FALSE(full_coverage_check(0.4, {0.3, 0.2}));
    CHECK(full_coverage_check(0.0, {0.6, 0.4}));
}

TEST_CASE("greedy keeps full coverage forever in the perfect regime") {
    Rng rng(21);
    for (int k = 0; k < 200; ++k) {
        const double v2 = 1.0 / 6.0 + (0.25 - 1.0 / 6.0) * rng.uniform01();
        const double v1 = std::max(v2, 1.0 - 3.0 * v2) + 1e-12;
        if (v1 >= 0.5) continue;
        const DefenderPair pair{v1, v2};
        REQUIRE(perfect_defense(pair));
        double a = 0.5;
        for (int s = 0; s < 200; ++s) {
            CHECK(full_coverage_check(a, pair));
            const auto tr = step(a, rng.uniform_location(), pair);
            CHECK(tr.reward == 1);
            a = tr.a_next;
        }
    }
}

TEST_CASE("capture_bound") {
    const auto exact = capture_bound({0.375, 0.125});
    CHECK(exact.w == 0.25);
    CHECK_FALSE(exact.unbounded);
    CHECK_FALSE(exact.vacuous);
    REQUIRE(exact.n_threshold.has_value());
    CHECK(*exact.n_threshold == 4);

    const auto mid = capture_bound({0.3, 0.2});
    CHECK(mid.w == doctest::Approx(0.1));
    REQUIRE(mid.n_threshold.has_value());
    CHECK(*mid.n_threshold == 10);

    const auto tie = capture_bound({0.2, 0.2});
    CHECK(tie.vacuous);
    CHECK_FALSE(tie.n_threshold.has_value());

    const auto perfect = capture_bound({0.5, 0.1});
    CHECK(perfect.unbounded);
    CHECK_FALSE(perfect.n_threshold.has_value());
}

TEST_CASE("run_greedy") {
    SUBCASE("breach sequences beat the greedy policy") {
        Rng rng(8);
        for (int k = 0; k < 50; ++k) {
            const double v2 = 0.01 + 0.2 * rng.uniform01();
            const double v1 = v2 + (std::min(0.5, 1.0 - 3.0 * v2) - v2) * 0.99 * rng.uniform01();
            const double eps_max = std::min((1.0 - (v1 + 3.0 * v2)) / 2.0, (0.5 - v1) / 2.0);
            const auto s = breach_sequence(v1, v2, 0.5 * eps_max);
            const auto run = run_greedy({v1, v2}, s);
            CHECK(run.breached >= 1);
            CHECK(run.thwarted + run.breached == 6);
        }
    }
    SUBCASE("greedy never beats the offline optimum") {
        Rng rng(9);
        for (int k = 0; k < 100; ++k) {
            const auto s = gen_fixed(10, rng.next());
            const double v2 = 0.01 + 0.2 * rng.uniform01();
            const double v1 = v2 + 0.3 * rng.uniform01();
            const auto run = run_greedy({v1, v2}, s);
            CHECK(run.breached >= static_cast<std::size_t>(opt_dp(SpeedVector{v1, v2}, s).opt));
        }
    }
    SUBCASE("rotating everything leaves the outcome unchanged") {
        Rng rng(10);
        for (int k = 0; k < 100; ++k) {
            const auto s = gen_fixed(15, rng.next());
            const double c = 0.125 * static_cast<double>(rng.next() % 8);
            std::vector<Attack> shifted;
            for (const auto& a : s.attacks()) shifted.push_back({PerimeterPoint(a.location.coordinate() + c), a.time});
            const AttackSequence rotated(std::move(shifted), Setting::fixed_time);
            const DefenderPair pair{0.2, 0.1};
            CHECK(run_greedy(pair, s).thwarted == run_greedy(pair, rotated, c, 0.5 + c).thwarted);
        }
    }
    CHECK_THROWS_AS(run_greedy({0.2, 0.1}, gen_uniform(5, 10.0, 1)), std::invalid_argument);
}
