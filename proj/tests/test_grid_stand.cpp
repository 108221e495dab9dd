#include <catch2/catch_amalgamated.hpp>

#include "standopt/stand.hpp"

#include "helpers.hpp"

using namespace standopt;
using Catch::Approx;

TEST_CASE("diameter grid bounds and midpoints") {
    DiameterGrid g(50.0, 12);
    CHECK(g.n_classes() == 12);
    CHECK(g.lower(0) == 0.0);
    CHECK(g.upper(0) == 50.0);
    CHECK(g.midpoint(2) == 125.0);
    CHECK(g.class_of(0.0) == 0);
    CHECK(g.class_of(49.999) == 0);
    CHECK(g.class_of(50.0) == 1);

    CHECK_THROWS_AS(DiameterGrid(0.0, 5), config_error);
    CHECK_THROWS_AS(DiameterGrid(50.0, 0), config_error);
}

TEST_CASE("basal area of a single cohort at midpoint 150 mm") {
    DiameterGrid g(50.0, 3, 125.0); // midpoints 150, 200, 250
    auto st = testutil::make_stand(g, {{Species::spruce, 0, 100.0}});

    const double expect = 100.0 * std::numbers::pi / 4.0 * 0.15 * 0.15;
    CHECK(basal_area(st) == Approx(expect).epsilon(1e-14));

    auto mean = ba_weighted_mean_diameter_cm(st);
    REQUIRE(mean.has_value());
    CHECK(*mean == Approx(15.0).epsilon(1e-14));
}

TEST_CASE("basal area-weighted mean diameter mixes classes by area") {
    DiameterGrid g(50.0, 3, 125.0);
    StandState st(g);
    st.cell(Species::pine, 0).stems = testutil::stems_for_ba(g, 0, 1.0); // 150 mm
    st.cell(Species::pine, 2).stems = testutil::stems_for_ba(g, 2, 3.0); // 250 mm

    CHECK(basal_area(st) == Approx(4.0).epsilon(1e-12));
    auto mean = ba_weighted_mean_diameter_cm(st);
    REQUIRE(mean.has_value());
    CHECK(*mean == Approx(22.5).epsilon(1e-12)); // (15 + 75) / 4
}

TEST_CASE("empty stand has zero basal area and no mean diameter") {
    StandState st{DiameterGrid(50.0, 5)};
    CHECK(basal_area(st) == 0.0);
    CHECK_FALSE(ba_weighted_mean_diameter_cm(st).has_value());
    CHECK_FALSE(stem_weighted_mean_diameter_mm(st).has_value());
    CHECK(st.empty());
}

TEST_CASE("stem-weighted mean diameter pools species") {
    DiameterGrid g(50.0, 6);
    auto st = testutil::make_stand(g, {{Species::spruce, 1, 300.0},  // 75 mm
                                       {Species::birch, 3, 100.0}}); // 175 mm
    auto mean = stem_weighted_mean_diameter_mm(st);
    REQUIRE(mean.has_value());
    CHECK(*mean == Approx((300.0 * 75.0 + 100.0 * 175.0) / 400.0).epsilon(1e-14));
}
