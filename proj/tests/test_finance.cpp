#include <catch2/catch_amalgamated.hpp>

#include "standopt/finance.hpp"

#include "helpers.hpp"

using namespace standopt;
using Catch::Approx;

namespace {

// cut a cyclic trajectory at sample i (a smooth point) and rebuild it
// starting there; the old boundary becomes an interior splice
Trajectory rotate_cycle(const Trajectory& t, size_t cut) {
    const auto& p = t.points;
    const size_t n = p.size();
    const double tau = p.back().age_months - p.front().age_months;
    const double a_cut = p[cut].age_months;

    Trajectory r;
    r.rotation_months = tau;
    for (size_t j = cut; j + 1 < n; ++j) {
        auto q = p[j];
        q.age_months -= a_cut;
        r.points.push_back(q);
    }
    // splice: the old endpoint pair collapses into one interior point
    TrajectoryPoint splice;
    splice.age_months = p.back().age_months - a_cut;
    splice.k_before = p.back().k_before;
    splice.k_after = p.front().k_after;
    splice.dkdt_before = p.back().dkdt_before;
    splice.dkdt_after = p.front().dkdt_after;
    r.points.push_back(splice);
    for (size_t j = 1; j <= cut; ++j) {
        auto q = p[j];
        q.age_months += tau - a_cut;
        r.points.push_back(q);
    }
    for (auto e : t.events) {
        double age = e.age_months - a_cut;
        if (age < 0.0) age += tau;
        if (e.age_months == p.back().age_months) age = tau - a_cut; // boundary events
        if (e.age_months == p.front().age_months) age = tau - a_cut;
        e.age_months = age;
        r.events.push_back(e);
    }
    return r;
}

} // namespace

TEST_CASE("instantaneous rate") {
    CHECK(instantaneous_rate(0.0, 1234.0) == 0.0);
    CHECK(instantaneous_rate(50.0, 1000.0) == Approx(0.05).epsilon(1e-15));
    CHECK(instantaneous_rate(100.0, 2000.0) == instantaneous_rate(50.0, 1000.0));
    CHECK_THROWS_AS(instantaneous_rate(10.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(instantaneous_rate(10.0, -5.0), std::domain_error);
}

TEST_CASE("constant capital and constant rate return the rate exactly") {
    // dyadic constants: the quadrature identity holds bit for bit
    const double k = 1024.0, rate = 0.03125;
    Trajectory t;
    for (double age = 0.0; age <= 120.0; age += 30.0)
        t.points.push_back({age, k, k, rate * k, rate * k});
    t.rotation_months = 120.0;
    CHECK(expected_rate(t) == rate);
}

TEST_CASE("piecewise-constant segments weight rates by capitalization") {
    // K=100 at r=0.05 for one year, then K=200 at r=0.02 for one year
    Trajectory t;
    t.points.push_back({0.0, 100.0, 100.0, 5.0, 5.0});
    t.points.push_back({12.0, 100.0, 200.0, 5.0, 4.0});
    t.points.push_back({24.0, 200.0, 200.0, 4.0, 4.0});
    t.events.push_back({12.0, EventKind::investment, 100.0});
    t.rotation_months = 24.0;
    CHECK(expected_rate(t) == Approx(0.03).epsilon(1e-14));
}

TEST_CASE("closed-form synthetic trajectory at 30-month sampling") {
    // K linear, kappa quadratic: trapezoid integrates both exactly.
    // K = 1000 + 100 a, dkappa/dt = 20 a  (a in years)
    Trajectory t;
    for (double age = 0.0; age <= 120.0; age += 30.0) {
        const double a = age / 12.0;
        const double k = 1000.0 + 100.0 * a;
        t.points.push_back({age, k, k, 20.0 * a, 20.0 * a});
    }
    t.rotation_months = 120.0;
    const double numerator = 10.0 * 100.0;             // integral of 20a over [0,10]
    const double denominator = 1000.0 * 10.0 + 50.0 * 100.0;
    CHECK(expected_rate(t) == Approx(numerator / denominator).epsilon(1e-6));
    CHECK(expected_rate(t) == Approx(numerator / denominator).epsilon(1e-14));
}

TEST_CASE("expected rate does not depend on the starting point of the cycle") {
    // a full cycle: invest 500 at age 0, linear value growth, felling at the end
    Trajectory t;
    const double tau = 300.0;
    for (double age = 0.0; age <= tau; age += 30.0) {
        const double k = 500.0 + 5.0 * age;
        t.points.push_back({age, k, k, 5.0 * 12.0, 5.0 * 12.0});
    }
    t.points.front().k_before = 0.0;
    t.points.back().k_after = 0.0;
    t.events.push_back({0.0, EventKind::investment, 500.0});
    t.events.push_back({tau, EventKind::felling, -(500.0 + 5.0 * tau - 50.0)}); // entry cost 50
    t.rotation_months = tau;

    const double base = expected_rate(t);
    for (size_t cut : {1u, 3u, 5u, 9u}) {
        const double rotated = expected_rate(rotate_cycle(t, cut));
        CHECK(rotated == Approx(base).epsilon(1e-10));
    }
}

TEST_CASE("build_trajectory reproduces the hand ledger") {
    std::vector<ValueSample> samples{
        {0.0, 0.0, 1000.0},     // regeneration
        {12.0, 1100.0, 1100.0},
        {24.0, 1210.0, 810.0},  // thinning pays out 400
        {36.0, 900.0, 0.0},     // felling pays out 900
    };
    std::vector<TrajectoryEvent> events{
        {0.0, EventKind::investment, 1000.0},
        {24.0, EventKind::thinning, -400.0},
        {36.0, EventKind::felling, -900.0},
    };
    const auto t = build_trajectory(samples, events);

    // double-entry: growth 100 + 110 + 90, every event jump fully cash-backed
    // capital integral: 1050 + 1155 + 855
    CHECK(expected_rate(t) == Approx(300.0 / 3060.0).epsilon(1e-14));

    CHECK(t.points[0].dkdt_after == Approx(100.0).epsilon(1e-14));
    CHECK(t.points[1].dkdt_before == Approx(100.0).epsilon(1e-14));
    CHECK(t.points[2].dkdt_before == Approx(110.0).epsilon(1e-14));
    CHECK(t.points[2].dkdt_after == Approx(90.0).epsilon(1e-14));
}

TEST_CASE("an event jump not fully cash-backed lands in the numerator") {
    // thinning: K drops 400 but only 350 is received -> 50 operating loss
    std::vector<ValueSample> samples{
        {0.0, 0.0, 1000.0}, {12.0, 1100.0, 700.0}, {24.0, 800.0, 800.0}};
    std::vector<TrajectoryEvent> events{{0.0, EventKind::investment, 1000.0},
                                        {12.0, EventKind::thinning, -350.0}};
    const auto t = build_trajectory(samples, events);
    const double numerator = (1100.0 - 1000.0) + (800.0 - 700.0) + (-400.0 + 350.0);
    const double denominator = (1000.0 + 1100.0) / 2.0 + (700.0 + 800.0) / 2.0;
    CHECK(expected_rate(t) == Approx(numerator / denominator).epsilon(1e-14));
}

TEST_CASE("a zero-value event changes nothing") {
    std::vector<ValueSample> samples{
        {0.0, 500.0, 500.0}, {30.0, 600.0, 600.0}, {60.0, 700.0, 700.0}};
    const auto plain = build_trajectory(samples, {});
    const auto with_event =
        build_trajectory(samples, {{30.0, EventKind::thinning, 0.0}});
    CHECK(expected_rate(with_event) == expected_rate(plain));
}

TEST_CASE("non-negative operating rates give a non-negative expected rate") {
    std::uniform_real_distribution<double> kdist(10.0, 5000.0);
    std::uniform_real_distribution<double> rdist(0.0, 300.0);
    for (int trial = 0; trial < 20; ++trial) {
        Trajectory t;
        for (double age = 0.0; age <= 240.0; age += 30.0) {
            const double k = kdist(testutil::rng());
            const double dk = rdist(testutil::rng());
            t.points.push_back({age, k, k, dk, dk});
        }
        t.rotation_months = 240.0;
        CHECK(expected_rate(t) >= 0.0);
    }
}

TEST_CASE("monetary homogeneity: scaling money leaves rates untouched") {
    std::vector<ValueSample> samples{
        {0.0, 0.0, 1000.0}, {12.0, 1100.0, 1100.0}, {24.0, 1210.0, 810.0}, {36.0, 900.0, 0.0}};
    std::vector<TrajectoryEvent> events{{0.0, EventKind::investment, 1000.0},
                                        {24.0, EventKind::thinning, -400.0},
                                        {36.0, EventKind::felling, -900.0}};
    const double base = expected_rate(build_trajectory(samples, events));

    const double lambda = 2.0;
    for (auto& s : samples) {
        s.k_before *= lambda;
        s.k_after *= lambda;
    }
    for (auto& e : events) e.amount *= lambda;
    CHECK(expected_rate(build_trajectory(samples, events)) == base);
}

TEST_CASE("expenses and amortization reduce the operating rate") {
    std::vector<ValueSample> samples{
        {0.0, 1000.0, 1000.0}, {30.0, 1200.0, 1200.0}, {60.0, 1500.0, 1500.0}};
    const double base = expected_rate(build_trajectory(samples, {}));

    FinanceParams expensed;
    expensed.annual_expense = 10.0;
    const double denominator = 2.5 * (1100.0 + 1350.0);
    CHECK(expected_rate(build_trajectory(samples, {}, expensed)) ==
          Approx(base - 10.0 * 5.0 / denominator).epsilon(1e-12));

    FinanceParams amortized;
    amortized.amortization_rate = 0.01;
    CHECK(expected_rate(build_trajectory(samples, {}, amortized)) ==
          Approx(base - 0.01).epsilon(1e-12));
}

TEST_CASE("degenerate trajectories are rejected") {
    Trajectory one_point;
    one_point.points.push_back({0.0, 100.0, 100.0, 0.0, 0.0});
    CHECK_THROWS_AS(expected_rate(one_point), simulation_error);

    Trajectory bad_k;
    bad_k.points.push_back({0.0, 100.0, 100.0, 0.0, 0.0});
    bad_k.points.push_back({30.0, 0.0, 0.0, 0.0, 0.0});
    bad_k.points.push_back({60.0, 100.0, 100.0, 0.0, 0.0});
    CHECK_THROWS_AS(expected_rate(bad_k), simulation_error);

    Trajectory stray_event;
    stray_event.points.push_back({0.0, 100.0, 100.0, 0.0, 0.0});
    stray_event.points.push_back({30.0, 100.0, 100.0, 0.0, 0.0});
    stray_event.events.push_back({15.0, EventKind::thinning, -10.0});
    CHECK_THROWS_AS(expected_rate(stray_event), simulation_error);
}
