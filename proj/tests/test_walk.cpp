#include <doctest.h>

#include <cmath>

#include "hsfnet/build.hpp"
#include "hsfnet/walk.hpp"

using namespace hsfnet;
using namespace hsfnet::walk;

TEST_CASE("star: every leaf absorbs in one step") {
    GraphInstance g = build_base(2, 0);
    auto s = exact_hitting_solve(TrapSpec(g));
    CHECK(s.mean == doctest::Approx(1.0));
    for (uint32_t v = 1; v < g.n(); ++v) CHECK(s.per_vertex[v] == doctest::Approx(1.0));
}

TEST_CASE("first generation: bottoms 3, centers 4, mean 10/3") {
    GraphInstance g = build_base(2, 1);
    auto s = exact_hitting_solve(TrapSpec(g));
    CHECK(s.per_level.at(1) == doctest::Approx(4.0));
    CHECK(s.per_level.at(2) == doctest::Approx(3.0));
    CHECK(s.mean == doctest::Approx(10.0 / 3.0));

    SolveOptions rational;
    rational.rational = true;
    auto exact = exact_hitting_solve(TrapSpec(g), rational);
    REQUIRE(exact.mean_exact.has_value());
    CHECK(*exact.mean_exact == Rational(10, 3));
}

TEST_CASE("second generation matches the closed forms exactly") {
    GraphInstance g = build_base(2, 2);
    SolveOptions rational;
    rational.rational = true;
    auto s = exact_hitting_solve(TrapSpec(g), rational);
    CHECK(s.per_level.at(1) == doctest::Approx(6.0));
    CHECK(s.per_level.at(2) == doctest::Approx(6.0));
    CHECK(s.per_level.at(3) == doctest::Approx(5.0));
    CHECK(*s.mean_exact == Rational(38, 7));
}

TEST_CASE("solve agrees with the closed forms across the grid") {
    for (int m = 2; m <= 3; ++m)
        for (int t = 1; t <= 4; ++t) {
            GraphInstance g = build_base(m, t);
            auto s = exact_hitting_solve(TrapSpec(g));
            CHECK(std::abs(s.mean - mean_hitting_closed(m, t).approx()) < 1e-9);
            for (const auto& [level, value] : s.per_level) {
                double expected = level == t + 1 ? 2 * t + 1 : 2 * t + 2;
                CHECK(std::abs(value - expected) < 1e-9);
            }
        }
}

TEST_CASE("level-collapsed solve matches the full solve") {
    for (int m = 2; m <= 4; ++m)
        for (int t = 1; t <= 5; ++t) {
            GraphInstance g = build_base(m, t);
            auto full = exact_hitting_solve(TrapSpec(g));
            auto collapsed = collapsed_hitting_solve(TrapSpec(g));
            CHECK(std::abs(collapsed.mean.convert_to<double>() - full.mean) < 1e-12);
            for (int level = 1; level <= t + 1; ++level)
                CHECK(std::abs(collapsed.per_level[level - 1].convert_to<double>() -
                               full.per_level.at(level)) < 1e-12);
        }
    // The wheel family is level-symmetric too.
    GraphInstance w = build_wheel(3, 2);
    auto full = exact_hitting_solve(TrapSpec(w));
    auto collapsed = collapsed_hitting_solve(TrapSpec(w));
    CHECK(std::abs(collapsed.mean.convert_to<double>() - full.mean) < 1e-12);
    // Random deletion breaks the symmetry.
    GraphInstance d = build_deleted(3, 2, 0.5, 1);
    CHECK_THROWS_AS(collapsed_hitting_solve(TrapSpec(d)), std::runtime_error);
}

TEST_CASE("iterative fallback reproduces the dense solve") {
    GraphInstance g = build_base(2, 2);  // 15 vertices
    SolveOptions opts;
    opts.dense_cap = 10;  // force Gauss-Seidel
    auto s = exact_hitting_solve(TrapSpec(g), opts);
    CHECK(s.sweeps > 0);
    CHECK(std::abs(s.mean - 38.0 / 7.0) < 1e-9);
}

TEST_CASE("hitting distribution from a bottom vertex") {
    GraphInstance g = build_base(2, 1);
    const uint32_t bottom = 3;
    REQUIRE(g.level(bottom) == 2);
    auto d = hitting_distribution(TrapSpec(g), bottom, 64);
    CHECK(d.prob[0] == doctest::Approx(0.5));          // P(H=1)
    CHECK(d.prob[1] == doctest::Approx(0.0));          // P(H=2)
    CHECK(d.prob[2] == doctest::Approx(0.25));         // P(H=3)
    for (int k = 0; k <= 6; ++k)
        CHECK(d.prob[2 * k] == doctest::Approx(std::pow(0.5, k + 1)));
    // Geometric tail: the horizon-64 mean misses exactly 67 * 2^-32.
    const double deficit_64 = 67.0 * std::pow(2.0, -32);
    CHECK(std::abs(d.truncated_mean - (3.0 - deficit_64)) < 1e-12);
    CHECK(d.truncated_mean <= 3.0 + 1e-12);
    // A horizon of 200 pushes the truncation below 1e-12.
    auto deep = hitting_distribution(TrapSpec(g), bottom, 200);
    CHECK(std::abs(deep.truncated_mean - 3.0) < 1e-12);

    // Tail mass shrinks monotonically with the horizon.
    double prev_tail = 1.0;
    for (uint64_t horizon : {4, 8, 16, 32}) {
        auto trunc = hitting_distribution(TrapSpec(g), bottom, horizon);
        CHECK(trunc.tail <= prev_tail);
        prev_tail = trunc.tail;
        double partial = 0;
        for (double p : trunc.prob) {
            CHECK(p >= 0.0);
            CHECK(p <= 1.0);
            partial += p;
        }
        CHECK(partial <= 1.0 + 1e-12);
    }
}

TEST_CASE("hitting distribution from a star leaf") {
    GraphInstance g = build_base(3, 0);
    auto d = hitting_distribution(TrapSpec(g), 1, 8);
    CHECK(d.prob[0] == doctest::Approx(1.0));
    CHECK(d.tail == doctest::Approx(0.0));
}

TEST_CASE("generating function moments") {
    for (int t = 0; t <= 20; ++t) {
        auto gf = generating_function_moments(2, t);
        CHECK(gf.at_one == 1);
        CHECK(gf.derivative_at_one == 2 * t + 1);
    }
    auto gf1 = generating_function_moments(2, 1);
    CHECK(gf1.series_coefficient(1) == Rational(1, 2));
    CHECK(gf1.series_coefficient(2) == 0);
    CHECK(gf1.series_coefficient(3) == Rational(1, 4));
    CHECK(gf1.series_coefficient(5) == Rational(1, 8));
    CHECK(gf1.eval(1.0) == doctest::Approx(1.0));

    // Series coefficients match the propagated distribution.
    GraphInstance g = build_base(2, 1);
    auto d = hitting_distribution(TrapSpec(g), 3, 15);
    for (uint64_t l = 1; l <= 15; ++l)
        CHECK(std::abs(d.prob[l - 1] -
                       gf1.series_coefficient(l).convert_to<double>()) < 1e-12);
}

TEST_CASE("simulation on the seed star is deterministic") {
    GraphInstance g = build_base(2, 0);
    WalkOptions opts;
    opts.trials = 1000;
    auto mc = simulate_walks(TrapSpec(g), opts);
    CHECK(mc.mean == doctest::Approx(1.0));
    CHECK(mc.std_error == doctest::Approx(0.0));
    CHECK(mc.truncated == 0);
}

TEST_CASE("simulation agrees with the solve") {
    GraphInstance g = build_base(2, 1);
    WalkOptions opts;
    opts.trials = 100'000;
    opts.seed = 12345;
    auto mc = simulate_walks(TrapSpec(g), opts);
    CHECK(std::abs(mc.mean - 10.0 / 3.0) <= 3.0 * mc.std_error);
    CHECK(mc.truncated == 0);

    auto again = simulate_walks(TrapSpec(g), opts);
    CHECK(again.mean == mc.mean);
    CHECK(again.std_error == mc.std_error);
}

TEST_CASE("fixed-source simulation hits the bottom closed form") {
    GraphInstance g = build_base(3, 3);
    WalkOptions opts;
    opts.trials = 20'000;
    opts.seed = 777;
    opts.source = 40;  // first bottom-level vertex
    REQUIRE(g.level(*opts.source) == 4);
    auto mc = simulate_walks(TrapSpec(g), opts);
    CHECK(std::abs(mc.mean - 7.0) <= 3.0 * mc.std_error);  // 2t+1 = 7
}

TEST_CASE("standard error shrinks like the square root of the trial count") {
    GraphInstance g = build_base(2, 2);
    auto se_at = [&](uint64_t trials) {
        WalkOptions opts;
        opts.trials = trials;
        opts.seed = 5;
        return simulate_walks(TrapSpec(g), opts).std_error;
    };
    const double se3 = se_at(1'000), se4 = se_at(10'000), se5 = se_at(100'000);
    CHECK(se3 > se4);
    CHECK(se4 > se5);
    const double ratio = se3 / se5;  // expect about 10
    CHECK(ratio > 5.0);
    CHECK(ratio < 20.0);
}

TEST_CASE("truncation is counted and flagged") {
    GraphInstance g = build_base(2, 1);
    WalkOptions opts;
    opts.trials = 2'000;
    opts.seed = 9;
    opts.max_steps = 2;  // many walks cannot reach the trap in time
    auto mc = simulate_walks(TrapSpec(g), opts);
    CHECK(mc.truncated > 0);
    CHECK(mc.truncation_flagged);
}

TEST_CASE("solve and simulation stay consistent off the base family") {
    for (const GraphInstance& g : {build_wheel(3, 2), build_deleted(3, 2, 0.5, 7)}) {
        auto solved = exact_hitting_solve(TrapSpec(g));
        WalkOptions opts;
        opts.trials = 20'000;
        opts.seed = 31;
        auto mc = simulate_walks(TrapSpec(g), opts);
        CHECK(std::abs(mc.mean - solved.mean) <= 3.0 * mc.std_error);
    }
}

TEST_CASE("input validation") {
    GraphInstance g = build_base(2, 1);
    CHECK_THROWS_AS(exact_hitting_solve(TrapSpec(g, 99)), std::invalid_argument);
    CHECK_THROWS_AS(hitting_distribution(TrapSpec(g), 0, 8), std::invalid_argument);
    CHECK_THROWS_AS(hitting_distribution(TrapSpec(g), 1, 0), std::invalid_argument);
    WalkOptions bad;
    bad.trials = 0;
    CHECK_THROWS_AS(simulate_walks(TrapSpec(g), bad), std::invalid_argument);
}
