#include <doctest.h>

#include "hsfnet/analytic.hpp"
#include "hsfnet/build.hpp"
#include "hsfnet/measure.hpp"
#include "oracles.hpp"

using namespace hsfnet;

namespace {

std::map<int, int> level_census(const GraphInstance& g) {
    std::map<int, int> census;
    for (uint32_t v = 0; v < g.n(); ++v) ++census[g.level(v)];
    return census;
}

bool bipartite_actives_bottom(const GraphInstance& g) {
    const int bottom = g.max_level();
    bool ok = true;
    g.for_each_edge([&](uint32_t u, uint32_t v) {
        const bool u_bottom = g.level(u) == bottom;
        const bool v_bottom = g.level(v) == bottom;
        if (u_bottom == v_bottom) ok = false;
    });
    return ok;
}

}  // namespace

TEST_CASE("seed star") {
    GraphInstance g = build_base(2, 0);
    CHECK(g.n() == 3);
    CHECK(g.edge_count() == 2);
    CHECK(g.hub() == 0);
    CHECK(g.degree(0) == 2);
    CHECK(level_census(g) == std::map<int, int>{{0, 1}, {1, 2}});
}

TEST_CASE("first growth step") {
    GraphInstance g = build_base(2, 1);
    CHECK(g.n() == 7);
    CHECK(g.edge_count() == 8);
    CHECK(g.degree(g.hub()) == 4);
    CHECK(level_census(g) == std::map<int, int>{{0, 1}, {1, 2}, {2, 4}});
    for (uint32_t v = 1; v <= 2; ++v) CHECK(g.degree(v) == 2);  // level 1
    for (uint32_t v = 3; v <= 6; ++v) CHECK(g.degree(v) == 2);  // level 2

    GraphInstance h = build_base(3, 1);
    CHECK(h.n() == 13);
    CHECK(h.edge_count() == 18);
}

TEST_CASE("counts match closed forms") {
    for (int m = 2; m <= 5; ++m)
        for (int t = 0; t <= 5; ++t) {
            GraphInstance g = build_base(m, t);
            auto [v, e] = analytic::counts(m, t);
            CHECK(BigInt(g.n()) == numerator(v.value));
            CHECK(BigInt(g.edge_count()) == numerator(e.value));
            uint64_t degree_sum = 0;
            for (uint32_t u = 0; u < g.n(); ++u) degree_sum += g.degree(u);
            CHECK(degree_sum == 2 * g.edge_count());
        }
}

TEST_CASE("matches the literal copy-based construction") {
    for (int m = 2; m <= 3; ++m)
        for (int t = 0; t <= 3; ++t) {
            GraphInstance g = build_base(m, t);
            oracle::RefGraph ref = oracle::ref_base(m, t);
            CHECK(g.n() == static_cast<uint32_t>(ref.n()));
            CHECK(g.edge_count() == static_cast<uint64_t>(ref.edge_count()));
            CHECK(oracle::level_degree_profile(g) == oracle::level_degree_profile(ref));

            GraphInstance w = build_wheel(m, t);
            oracle::RefGraph wref = oracle::ref_wheel(m, t);
            CHECK(w.n() == static_cast<uint32_t>(wref.n()));
            CHECK(w.edge_count() == static_cast<uint64_t>(wref.edge_count()));
            CHECK(oracle::level_degree_profile(w) == oracle::level_degree_profile(wref));
        }
}

TEST_CASE("base graphs are triangle-free and bipartite") {
    for (int m = 2; m <= 4; ++m)
        for (int t = 0; t <= 4; ++t) {
            GraphInstance g = build_base(m, t);
            CHECK(oracle::brute_triangles(g) == 0);
            CHECK(bipartite_actives_bottom(g));
        }
}

TEST_CASE("degree multiset equals the degree table") {
    for (int m = 2; m <= 4; ++m)
        for (int t = 0; t <= 4; ++t) {
            GraphInstance g = build_base(m, t);
            std::map<uint64_t, uint64_t> expected;
            for (const auto& row : analytic::degree_table(m, t))
                expected[row.degree.convert_to<uint64_t>()] +=
                    row.count.convert_to<uint64_t>();
            CHECK(measure::degree_histogram(g).counts == expected);
        }
}

TEST_CASE("wheel seeds") {
    GraphInstance k4 = build_wheel(3, 0);
    CHECK(k4.n() == 4);
    CHECK(k4.edge_count() == 6);
    for (uint32_t v = 0; v < 4; ++v) CHECK(k4.degree(v) == 3);

    GraphInstance triangle = build_wheel(2, 0);
    CHECK(triangle.n() == 3);
    CHECK(triangle.edge_count() == 3);

    GraphInstance w = build_wheel(3, 1);
    CHECK(w.n() == 13);
    CHECK(w.edge_count() == 27);
    // Rim edges stay inside the bottom level.
    const int bottom = w.max_level();
    uint64_t rim = 0;
    w.for_each_edge([&](uint32_t u, uint32_t v) {
        if (w.level(u) == bottom && w.level(v) == bottom) ++rim;
        CHECK((w.level(u) == bottom || w.level(v) == bottom));
    });
    CHECK(rim == 9);
}

TEST_CASE("deletion endpoints: p=0 is the wheel, p=1 is the base") {
    for (auto [m, t] : {std::pair{3, 2}, std::pair{2, 3}}) {
        CHECK(graph_equal(build_deleted(m, t, 0.0, 9), build_wheel(m, t)));
        CHECK(graph_equal(build_deleted(m, t, 1.0, 9), build_base(m, t)));
    }
}

TEST_CASE("seeded deletion is reproducible") {
    GraphInstance a = build_deleted(3, 3, 0.5, 42);
    GraphInstance b = build_deleted(3, 3, 0.5, 42);
    CHECK(graph_equal(a, b));

    // Different seeds should give different survivals somewhere.
    bool any_differs = false;
    for (uint64_t seed = 1; seed <= 5 && !any_differs; ++seed)
        any_differs = !graph_equal(a, build_deleted(3, 3, 0.5, seed));
    CHECK(any_differs);
}

TEST_CASE("deleted graphs stay connected") {
    for (double p : {0.3, 0.7, 1.0})
        for (uint64_t seed = 1; seed <= 3; ++seed)
            CHECK(measure::is_connected(build_deleted(3, 2, p, seed)));
}

TEST_CASE("parameter and size validation") {
    CHECK_THROWS_AS(build_base(1, 2), std::invalid_argument);
    CHECK_THROWS_AS(build_base(2, -1), std::invalid_argument);
    CHECK_THROWS_AS(build_deleted(3, 1, 1.5, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_base(2, 30), std::runtime_error);
    BuildOptions tight;
    tight.size_cap = 100;
    CHECK_THROWS_AS(build_base(3, 3, tight), std::runtime_error);
    CHECK_NOTHROW(build_base(3, 3));
}
