#include <doctest.h>

#include <sstream>

#include "hsfnet/build.hpp"
#include "hsfnet/serialize.hpp"

using namespace hsfnet;

TEST_CASE("edge list format") {
    CHECK(export_edges_string(build_base(2, 0), ExportFormat::EdgeList) == "0 1\n0 2\n");

    std::string lines = export_edges_string(build_base(2, 1), ExportFormat::EdgeList);
    CHECK(std::count(lines.begin(), lines.end(), '\n') == 8);
}

TEST_CASE("edge list round trip recovers the instance") {
    GraphInstance g = build_base(2, 1);
    ImportResult imported =
        import_edges_string(export_edges_string(g, ExportFormat::EdgeList));
    CHECK(imported.warnings.empty());
    CHECK(graph_equal(imported.graph, g));
    CHECK(imported.graph.levels_known());
    REQUIRE(imported.graph.params().has_value());
    CHECK(imported.graph.params()->variant == Variant::Base);
    CHECK(imported.graph.params()->m == 2);
    CHECK(imported.graph.params()->t == 1);
}

TEST_CASE("edge list round trip across the family grid") {
    for (int m = 2; m <= 3; ++m)
        for (int t = 0; t <= 2; ++t) {
            GraphInstance g = build_base(m, t);
            auto back = import_edges_string(export_edges_string(g, ExportFormat::EdgeList));
            CHECK(graph_equal(back.graph, g));

            GraphInstance w = build_wheel(m, t);
            auto wback = import_edges_string(export_edges_string(w, ExportFormat::EdgeList),
                                             ModelParams::wheel(m, t));
            CHECK(graph_equal(wback.graph, w));
        }
}

TEST_CASE("json round trip keeps params and levels") {
    GraphInstance g = build_deleted(3, 2, 0.5, 7);
    ImportResult back = import_edges_string(export_edges_string(g, ExportFormat::Json));
    CHECK(graph_equal(back.graph, g));
    REQUIRE(back.graph.params().has_value());
    CHECK(back.graph.params()->variant == Variant::Deleted);
    CHECK(back.graph.params()->p == 0.5);
    CHECK(back.graph.params()->seed == 7);

    GraphInstance w = build_wheel(3, 1);
    CHECK(graph_equal(import_edges_string(export_edges_string(w, ExportFormat::Json)).graph, w));

    // The m=2 wheel marks its single-edge rim in the metadata.
    CHECK(export_edges_string(build_wheel(2, 1), ExportFormat::Json)
              .find("\"degenerate_rim\":true") != std::string::npos);
    CHECK(export_edges_string(build_wheel(3, 1), ExportFormat::Json)
              .find("degenerate_rim") == std::string::npos);
}

TEST_CASE("dot export carries levels") {
    std::string dot = export_edges_string(build_base(2, 1), ExportFormat::Dot);
    CHECK(dot.find("graph hsfnet {") != std::string::npos);
    CHECK(dot.find("[level=0]") != std::string::npos);
    CHECK(dot.find(" -- ") != std::string::npos);
}

TEST_CASE("malformed input is rejected") {
    CHECK_THROWS_AS(import_edges_string(""), ParseError);
    CHECK_THROWS_AS(import_edges_string("0 0\n"), ParseError);
    CHECK_THROWS_AS(import_edges_string("0 1\n0 1\n"), ParseError);
    CHECK_THROWS_AS(import_edges_string("0 1\n1 0\n"), ParseError);  // same edge reversed
    CHECK_THROWS_AS(import_edges_string("a b\n"), ParseError);
    CHECK_THROWS_AS(import_edges_string("0 1 2\n"), ParseError);
    CHECK_THROWS_AS(import_edges_string("-1 1\n"), ParseError);
}

TEST_CASE("disconnected input is a warning, not an error") {
    ImportResult r = import_edges_string("0 1\n2 3\n");
    REQUIRE(!r.warnings.empty());
    bool saw = false;
    for (const auto& w : r.warnings)
        if (w.find("disconnected") != std::string::npos) saw = true;
    CHECK(saw);
    CHECK(r.graph.n() == 4);
    CHECK(!r.graph.levels_known());
}

TEST_CASE("ad-hoc graphs import without level recovery") {
    ImportResult r = import_edges_string("0 1\n1 2\n2 3\n3 0\n");  // C4
    CHECK(r.graph.n() == 4);
    CHECK(r.graph.edge_count() == 4);
    CHECK(!r.graph.levels_known());
}
