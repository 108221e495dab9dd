#include <catch2/catch_amalgamated.hpp>

#include "standopt/valuation.hpp"

#include "helpers.hpp"

using namespace standopt;
using Catch::Approx;

namespace {

// three classes: pulpwood-only, mixed, sawlog-heavy
EconTables mixed_econ() {
    EconTables econ;
    for (Species sp : all_species) econ.prices[sp] = {17.0, 60.0};
    for (Species sp : all_species) {
        econ.yields.set(sp, 0, {0.05, 0.0});
        econ.yields.set(sp, 1, {0.2, 0.3});
        econ.yields.set(sp, 2, {0.25, 0.8});
    }
    econ.costs.per_stem = {0.0, 0.0, 0.0};
    econ.costs.per_m3 = {0.0, 0.0, 0.0};
    return econ;
}

} // namespace

TEST_CASE("tree price combines pulp and quality-scaled sawlog terms") {
    const auto econ = mixed_econ();
    // 0.2*17 + 0.3*1.25*60
    CHECK(tree_price(Species::spruce, 1, 1.25, econ.yields, econ.prices) ==
          Approx(25.9).epsilon(1e-14));
    // j = 1 reduces to the plain expected price
    CHECK(tree_price(Species::spruce, 1, 1.0, econ.yields, econ.prices) ==
          Approx(0.2 * 17.0 + 0.3 * 60.0).epsilon(1e-14));
}

TEST_CASE("pulpwood-sized trees are priced independently of quality") {
    const auto econ = mixed_econ();
    const double base = tree_price(Species::pine, 0, 1.0, econ.yields, econ.prices);
    for (double j : {0.5, 1.0, 1.3, 1.5})
        CHECK(tree_price(Species::pine, 0, j, econ.yields, econ.prices) == base);
}

TEST_CASE("missing yield rows are reported by name") {
    const auto econ = mixed_econ();
    CHECK_THROWS_MATCHES(tree_price(Species::birch, 7, 1.0, econ.yields, econ.prices),
                         table_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("birch") &&
                             Catch::Matchers::ContainsSubstring("7")));
}

TEST_CASE("stand value: empty stand, linearity, mixed oracle") {
    DiameterGrid grid(50.0, 3);
    auto econ = mixed_econ();

    StandState empty(grid);
    CHECK(stand_value(empty, econ) == 0.0);

    auto st = testutil::make_stand(grid, {{Species::spruce, 1, 100.0}});
    st.cell(Species::spruce, 1).quality = 1.25;
    CHECK(stand_value(st, econ) == Approx(2590.0).epsilon(1e-12));

    auto mixed = testutil::make_stand(grid, {{Species::spruce, 0, 500.0},
                                             {Species::spruce, 1, 300.0},
                                             {Species::birch, 2, 50.0}});
    double oracle = 0.0;
    oracle += 500.0 * (0.05 * 17.0);
    oracle += 300.0 * (0.2 * 17.0 + 0.3 * 60.0);
    oracle += 50.0 * (0.25 * 17.0 + 0.8 * 60.0);
    CHECK(stand_value(mixed, econ) == Approx(oracle).epsilon(1e-12));
}

TEST_CASE("net-roadside valuation floors loss-making classes at zero") {
    DiameterGrid grid(50.0, 3);
    auto econ = mixed_econ();
    econ.costs.per_stem = {2.0, 2.0, 2.0}; // pulp class worth 0.85/stem gross
    econ.costs.per_m3 = {10.0, 10.0, 10.0};

    auto st = testutil::make_stand(grid, {{Species::pine, 0, 400.0}});
    CHECK(stand_value(st, econ) == 0.0);

    econ.basis = CapitalizationBasis::gross_roadside;
    CHECK(stand_value(st, econ) == Approx(400.0 * 0.85).epsilon(1e-12));

    // a profitable class is netted, not floored
    econ.basis = CapitalizationBasis::net_roadside;
    auto big = testutil::make_stand(grid, {{Species::pine, 2, 100.0}});
    const double per_stem_net = (0.25 * 17.0 + 0.8 * 60.0) - 2.0 - 1.05 * 10.0;
    CHECK(stand_value(big, econ) == Approx(100.0 * per_stem_net).epsilon(1e-12));
}

TEST_CASE("scaling prices and costs scales every valuation by the same factor") {
    DiameterGrid grid(50.0, 3);
    auto econ = mixed_econ();
    econ.costs.per_stem = {0.5, 0.5, 0.5};
    econ.costs.per_m3 = {8.0, 6.0, 5.0};
    econ.costs.entry_per_operation = 120.0;

    auto st = testutil::make_stand(grid, {{Species::spruce, 0, 321.0},
                                          {Species::spruce, 1, 123.0},
                                          {Species::pine, 2, 45.0}});
    HarvestRecord rec;
    rec.removals = {{Species::spruce, 1, 60.0, 1.1}, {Species::pine, 2, 20.0, 0.95}};

    const double v1 = stand_value(st, econ);
    const auto h1 = harvest_value(rec, econ);

    auto scaled = econ;
    const double lambda = 2.0; // power of two: scaling is exact
    for (Species sp : all_species) {
        scaled.prices[sp].pulp_per_m3 *= lambda;
        scaled.prices[sp].saw_per_m3 *= lambda;
    }
    for (auto& c : scaled.costs.per_stem) c *= lambda;
    for (auto& c : scaled.costs.per_m3) c *= lambda;
    scaled.costs.entry_per_operation *= lambda;

    CHECK(stand_value(st, scaled) == lambda * v1);
    const auto h2 = harvest_value(rec, scaled);
    CHECK(h2.gross == lambda * h1.gross);
    CHECK(h2.cost == lambda * h1.cost);
    CHECK(h2.net == lambda * h1.net);
}

TEST_CASE("stand value is monotone in stems and quality") {
    DiameterGrid grid(50.0, 3);
    auto econ = mixed_econ();
    econ.costs.per_stem = {3.0, 1.0, 1.0};
    econ.costs.per_m3 = {12.0, 8.0, 6.0};

    auto st = testutil::make_stand(grid, {{Species::spruce, 0, 200.0},
                                          {Species::spruce, 1, 150.0},
                                          {Species::spruce, 2, 80.0}});
    const double base = stand_value(st, econ);

    auto more = st;
    more.cell(Species::spruce, 0).stems += 100.0; // loss-making class: floored, not negative
    CHECK(stand_value(more, econ) >= base);
    more.cell(Species::spruce, 2).stems += 10.0;
    CHECK(stand_value(more, econ) > base);

    auto better = st;
    better.cell(Species::spruce, 2).quality = 1.4;
    CHECK(stand_value(better, econ) > base);
}

TEST_CASE("harvest value nets the operation costs including entry") {
    auto econ = mixed_econ();
    econ.costs.per_stem = {0.0, 1.0, 0.0};
    econ.costs.per_m3 = {0.0, 4.0, 0.0};
    econ.costs.entry_per_operation = 100.0;

    HarvestRecord rec;
    rec.removals = {{Species::spruce, 1, 50.0, 1.0}};
    const auto v = harvest_value(rec, econ);
    const double gross = 50.0 * (0.2 * 17.0 + 0.3 * 60.0);
    const double cost = 100.0 + 50.0 * 1.0 + 50.0 * 0.5 * 4.0;
    CHECK(v.gross == Approx(gross).epsilon(1e-14));
    CHECK(v.cost == Approx(cost).epsilon(1e-14));
    CHECK(v.net == Approx(gross - cost).epsilon(1e-14));

    CHECK(harvest_value(HarvestRecord{}, econ).net == 0.0); // no removals, no entry
}
