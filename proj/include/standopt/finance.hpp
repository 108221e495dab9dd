#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "standopt/errors.hpp"

namespace standopt {

enum class EventKind { investment, thinning, felling };

// One sampled instant of the capitalization trajectory. Left/right limits
// differ only at event ages (thinning, felling, regeneration); dkdt is the
// operating-profit change rate dkappa/dt in currency/ha/yr.
struct TrajectoryPoint {
    double age_months = 0.0;
    double k_before = 0.0;
    double k_after = 0.0;
    double dkdt_before = 0.0;
    double dkdt_after = 0.0;
};

// Signed cash flow at an event age: investments positive (they raise K),
// withdrawals negative. Amounts never enter kappa; whatever part of the K
// jump is not explained by the cash flow is operating profit or loss at the
// event (quality revaluation of survivors, operation entry cost).
struct TrajectoryEvent {
    double age_months = 0.0;
    EventKind kind = EventKind::thinning;
    double amount = 0.0;
};

struct Trajectory {
    std::vector<TrajectoryPoint> points; // ascending age, one rotation
    std::vector<TrajectoryEvent> events; // each at some point's age
    double rotation_months = 0.0;
};

// Momentary return rate on capital, 1/yr.
inline double instantaneous_rate(double dkappa_dt, double k) {
    if (k <= 0.0)
        throw std::domain_error("instantaneous_rate: capitalization must be positive");
    return dkappa_dt / k;
}

namespace detail {

inline void validate_trajectory(const Trajectory& t) {
    const auto& pts = t.points;
    if (pts.size() < 2)
        throw simulation_error("trajectory needs at least two samples");
    for (size_t i = 0; i + 1 < pts.size(); ++i)
        if (!(pts[i + 1].age_months > pts[i].age_months))
            throw simulation_error("trajectory samples must be strictly increasing in age");
    for (size_t i = 0; i < pts.size(); ++i) {
        if (i > 0 && pts[i].k_before <= 0.0)
            throw simulation_error("capitalization must stay positive inside the rotation");
        if (i + 1 < pts.size() && pts[i].k_after <= 0.0)
            throw simulation_error("capitalization must stay positive inside the rotation");
    }
    for (const auto& e : t.events) {
        bool found = false;
        for (const auto& p : pts)
            if (p.age_months == e.age_months) { found = true; break; }
        if (!found)
            throw simulation_error("trajectory event does not coincide with any sample age");
    }
}

} // namespace detail

// Expected return rate on capital over one rotation: the capitalization-
// weighted mean of the momentary rate, computed as the ratio of the
// operating-profit integral to the capitalization integral. Trapezoidal
// quadrature on the sample grid, with event ages splitting the integrands
// into left/right limits; event instants additionally contribute the part
// of the K jump not carried by the cash amount. With a periodic boundary
// the result does not depend on which age the cycle is cut at.
inline double expected_rate(const Trajectory& traj) {
    detail::validate_trajectory(traj);
    const auto& pts = traj.points;

    double numerator = 0.0;
    double denominator = 0.0;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        const double dt_yr = (pts[i + 1].age_months - pts[i].age_months) / 12.0;
        numerator += 0.5 * (pts[i].dkdt_after + pts[i + 1].dkdt_before) * dt_yr;
        denominator += 0.5 * (pts[i].k_after + pts[i + 1].k_before) * dt_yr;
    }

    // operating profit at event instants: K jump net of cash flow
    for (const auto& p : pts) {
        double cash = 0.0;
        bool has_event = false;
        for (const auto& e : traj.events)
            if (e.age_months == p.age_months) { cash += e.amount; has_event = true; }
        if (has_event || p.k_after != p.k_before)
            numerator += (p.k_after - p.k_before) - cash;
    }

    if (denominator <= 0.0)
        throw simulation_error("expected_rate: non-positive capitalization integral");
    return numerator / denominator;
}

struct FinanceParams {
    double annual_expense = 0.0;     // currency/ha/yr, subtracted from kappa
    double amortization_rate = 0.0;  // 1/yr write-down, proportional to K
};

// A valuation sample of the stand between events; k_before != k_after only
// at event ages.
struct ValueSample {
    double age_months = 0.0;
    double k_before = 0.0;
    double k_after = 0.0;
};

// Assemble a trajectory from valuation samples and cash events. Between
// samples the operating rate is the secant of the capitalization (no
// investments or withdrawals happen there), less expenses and amortization,
// so the quadrature reproduces the value ledger exactly.
inline Trajectory build_trajectory(const std::vector<ValueSample>& samples,
                                   const std::vector<TrajectoryEvent>& events,
                                   const FinanceParams& fin = {}) {
    Trajectory t;
    t.events = events;
    t.points.reserve(samples.size());
    for (const auto& s : samples)
        t.points.push_back({s.age_months, s.k_before, s.k_after, 0.0, 0.0});

    for (size_t i = 0; i + 1 < t.points.size(); ++i) {
        auto& a = t.points[i];
        auto& b = t.points[i + 1];
        const double dt_yr = (b.age_months - a.age_months) / 12.0;
        const double rate = dt_yr > 0.0 ? (b.k_before - a.k_after) / dt_yr : 0.0;
        a.dkdt_after = rate - fin.annual_expense - fin.amortization_rate * a.k_after;
        b.dkdt_before = rate - fin.annual_expense - fin.amortization_rate * b.k_before;
    }
    if (!t.points.empty()) {
        t.points.front().dkdt_before = t.points.front().dkdt_after;
        t.points.back().dkdt_after = t.points.back().dkdt_before;
        t.rotation_months = t.points.back().age_months - t.points.front().age_months;
    }
    return t;
}

} // namespace standopt
