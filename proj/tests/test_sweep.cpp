#include <doctest.h>

#include <sstream>

#include "hsfnet/sweep.hpp"

using namespace hsfnet;
using namespace hsfnet::sweep;

TEST_CASE("deleted sweep at p=0 reduces to the wheel sweep") {
    SweepSpec wheel;
    wheel.variant = Variant::Wheel;
    wheel.ms = {2};
    wheel.ts = {4};
    wheel.quantities = {Quantity::Clustering};
    wheel.measure = false;
    auto wheel_rows = run_sweep(wheel);

    SweepSpec deleted = wheel;
    deleted.variant = Variant::Deleted;
    deleted.ps = {0.0};
    auto deleted_rows = run_sweep(deleted);

    REQUIRE(wheel_rows.size() == 1);
    REQUIRE(deleted_rows.size() == 1);
    CHECK(wheel_rows[0].closed_form == deleted_rows[0].closed_form);
}

TEST_CASE("rows come back in grid order") {
    SweepSpec spec;
    spec.variant = Variant::Base;
    spec.ms = {2, 3};
    spec.ts = {1, 2};
    spec.quantities = {Quantity::Edges, Quantity::Diameter};
    spec.jobs = 2;
    auto rows = run_sweep(spec);
    REQUIRE(rows.size() == 8);
    CHECK((rows[0].m == 2 && rows[0].t == 1 && rows[0].quantity == Quantity::Edges));
    CHECK((rows[1].m == 2 && rows[1].t == 1 && rows[1].quantity == Quantity::Diameter));
    CHECK((rows[2].m == 2 && rows[2].t == 2));
    CHECK((rows[4].m == 3 && rows[4].t == 1));
    for (const auto& row : rows) {
        CHECK(row.error.empty());
        CHECK(row.closed_form == row.measured);  // counts and diameters agree exactly
    }
}

TEST_CASE("partial failures land in the error column") {
    SweepSpec spec;
    spec.variant = Variant::Wheel;
    spec.ms = {3};
    spec.ts = {0};  // K4: every endpoint degree equal, Pearson undefined
    spec.quantities = {Quantity::Assortativity, Quantity::Edges};
    auto rows = run_sweep(spec);
    REQUIRE(rows.size() == 2);
    CHECK(!rows[0].error.empty());
    CHECK(!rows[0].closed_form.empty());  // the closed form still evaluates
    CHECK(rows[1].error.empty());
    CHECK(rows[1].measured == "6");
}

TEST_CASE("measurement is skipped above the cap") {
    SweepSpec spec;
    spec.variant = Variant::Base;
    spec.ms = {8};
    spec.ts = {12};  // far above any measurable size
    spec.quantities = {Quantity::Assortativity};
    spec.measure_cap = 100'000;
    auto rows = run_sweep(spec);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].measured.empty());
    CHECK(!rows[0].closed_form.empty());
    CHECK(rows[0].error.empty());
}

TEST_CASE("csv shape") {
    SweepSpec spec;
    spec.variant = Variant::Base;
    spec.ms = {2};
    spec.ts = {1};
    spec.quantities = {Quantity::Clustering};
    std::ostringstream out;
    write_csv(out, run_sweep(spec));
    std::istringstream lines(out.str());
    std::string header, row;
    std::getline(lines, header);
    CHECK(header == "variant,m,t,p,seed,quantity,closed_form,measured,stderr,error");
    std::getline(lines, row);
    CHECK(row == "base,2,1,,,clustering,0,0,,");
}

TEST_CASE("grid validation") {
    SweepSpec spec;
    spec.quantities = {Quantity::Edges};
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);  // empty grid
    spec.ms = {2};
    spec.ts = {1};
    spec.ps = {0.5};  // p list off the deleted variant
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
}
