#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "standopt/early_stand.hpp"
#include "standopt/finance.hpp"
#include "standopt/growth.hpp"
#include "standopt/quality.hpp"
#include "standopt/scenario.hpp"
#include "standopt/valuation.hpp"
#include "standopt/vigor.hpp"

namespace standopt {

// Everything the simulator consumes besides the stand itself.
struct ModelInputs {
    DiameterGrid grid;
    std::map<std::string, double> site;
    GrowthCoefficients growth;
    EconTables econ;
    FinanceParams finance;
};

// A thinning/rotation management program. Thinning triggers on a basal-area
// threshold or on fixed ages; the removal profile is thin-from-above: full
// survival below the pivot class, a linear survival taper at and above it,
// and an optional uniform quality-thinning depth multiplying every class.
// Strip roads are opened at the first thinning of the rotation only.
struct PolicySpec {
    std::optional<double> ba_trigger_m2ha;
    std::vector<double> trigger_ages_months;
    double striproad_survival = 0.85;
    int pivot_class = 4;
    double taper_slope = 0.5;
    double depth = 1.0;
    int max_thinnings = 2;
    double rotation_months = 900.0;

    bool thins() const { return ba_trigger_m2ha.has_value() || !trigger_ages_months.empty(); }

    // post-strip-road survival per class
    std::vector<double> survival_profile(const DiameterGrid& grid) const {
        std::vector<double> s(grid.n_classes(), 1.0);
        for (int c = 0; c < grid.n_classes(); ++c) {
            double taper = 1.0;
            if (c >= pivot_class)
                taper = std::max(0.0, 1.0 - taper_slope * (c - pivot_class + 1));
            s[c] = depth * taper;
        }
        return s;
    }
};

// One thinning as it happened during a simulation.
struct ThinningEventRecord {
    int index = 0;
    double age_months = 0.0;
    double ba_before = 0.0, ba_after = 0.0;       // m2/ha
    double stems_before = 0.0, stems_after = 0.0; // 1/ha
    double k_before = 0.0, k_after = 0.0;         // currency/ha
    HarvestRecord harvest;
    HarvestValuation value;
    std::vector<double> ba_removed_fraction;      // per class, species pooled
};

// Raw simulation of one stand under one policy up to a horizon age,
// independent of the rotation chosen afterwards. The same run serves every
// candidate rotation age by truncation.
struct HorizonRun {
    BootstrapResult boot;
    double step_months = 30.0;
    std::vector<ValueSample> samples;          // model phase, handoff..horizon
    std::vector<StandState> states_pre;        // state before any event at the sample age
    std::vector<StandState> states_post;       // state carried forward
    std::vector<ThinningEventRecord> thinnings;
};

namespace detail {

inline ThinningSpec make_thinning_spec(const PolicySpec& policy, const DiameterGrid& grid,
                                       bool first_thinning) {
    ThinningSpec spec;
    spec.striproad_survival = first_thinning ? policy.striproad_survival : 1.0;
    spec.total_survival = policy.survival_profile(grid);
    for (double& s : spec.total_survival) s *= spec.striproad_survival;
    return spec;
}

inline bool trigger_fires(const PolicySpec& policy, const StandState& state, int done) {
    if (done >= policy.max_thinnings) return false;
    if (policy.ba_trigger_m2ha && basal_area(state) >= *policy.ba_trigger_m2ha) return true;
    for (double t : policy.trigger_ages_months)
        if (std::abs(state.age_months() - t) < 1e-6) return true;
    return false;
}

} // namespace detail

inline HorizonRun simulate_to_horizon(const BootstrapSpec& boot_spec, const PolicySpec& policy,
                                      const ScenarioConfig& scenario, const ModelInputs& in,
                                      double horizon_months) {
    scenario.validate();
    HorizonRun run;
    run.boot = bootstrap(boot_spec, in.grid, in.site, in.econ);
    run.step_months = scenario.step_months;

    StandState state = run.boot.handoff_state;
    run.samples.push_back({state.age_months(), run.boot.handoff_value + in.econ.land_value,
                           run.boot.handoff_value + in.econ.land_value});
    run.states_pre.push_back(state);
    run.states_post.push_back(state);

    const double vigor_age =
        run.boot.handoff_age_months + scenario.vigor_age_offset_months;
    bool vigor_assigned = !scenario.vigor_active();
    int thinnings_done = 0;

    for (double age = run.boot.handoff_age_months + scenario.step_months;
         age <= horizon_months + 1e-6; age += scenario.step_months) {
        state = step(state, in.growth, scenario).state;

        if (!vigor_assigned && state.age_months() >= vigor_age - 1e-6) {
            apply_vigor_assignment(state, in.growth, scenario);
            vigor_assigned = true;
        }

        const StandState pre_event = state;
        const double k_before = stand_value(state, in.econ);
        double k_after = k_before;

        if (detail::trigger_fires(policy, state, thinnings_done)) {
            ThinningEventRecord ev;
            ev.index = thinnings_done;
            ev.age_months = state.age_months();
            ev.ba_before = basal_area(state);
            ev.stems_before = state.total_stems();
            ev.k_before = k_before;

            const auto spec =
                detail::make_thinning_spec(policy, in.grid, thinnings_done == 0);
            auto thinned = apply_thinning(state, spec, scenario);
            state = std::move(thinned.state);

            ev.ba_after = basal_area(state);
            ev.stems_after = state.total_stems();
            ev.harvest = std::move(thinned.harvest);
            ev.value = harvest_value(ev.harvest, in.econ);
            k_after = stand_value(state, in.econ);
            ev.k_after = k_after;

            ev.ba_removed_fraction.assign(in.grid.n_classes(), 0.0);
            for (int c = 0; c < in.grid.n_classes(); ++c) {
                double pre = 0.0, post = 0.0;
                for (Species sp : all_species) {
                    pre += pre_event.cell(sp, c).stems;
                    post += state.cell(sp, c).stems;
                }
                if (pre > 0.0) ev.ba_removed_fraction[c] = (pre - post) / pre;
            }
            run.thinnings.push_back(std::move(ev));
            ++thinnings_done;
        }

        run.samples.push_back({state.age_months(), k_before, k_after});
        run.states_pre.push_back(pre_event);
        run.states_post.push_back(state);
    }
    return run;
}

// Close the run at rotation age tau: final felling of the pre-event state,
// trajectory assembled from the exponential prefix and the sampled model
// phase, events carrying the regeneration investment and the harvest cash.
inline Trajectory rotation_trajectory(const HorizonRun& run, double tau_months,
                                      const ModelInputs& in) {
    const double step = run.step_months;
    size_t i_tau = run.samples.size();
    for (size_t i = 0; i < run.samples.size(); ++i)
        if (std::abs(run.samples[i].age_months - tau_months) < 1e-6) { i_tau = i; break; }
    if (i_tau == run.samples.size())
        throw simulation_error("rotation age does not fall on a simulated sample");

    std::vector<ValueSample> samples;
    std::vector<TrajectoryEvent> events;
    for (double age = 0.0; age < run.boot.handoff_age_months - 1e-9; age += step) {
        const double k = run.boot.k_at(age) + in.econ.land_value;
        samples.push_back({age, age == 0.0 ? 0.0 : k, k});
    }
    events.push_back({0.0, EventKind::investment, run.boot.k0});

    for (size_t i = 0; i <= i_tau; ++i) samples.push_back(run.samples[i]);

    for (const auto& ev : run.thinnings)
        if (ev.age_months < tau_months - 1e-6)
            events.push_back({ev.age_months, EventKind::thinning, -ev.value.net});

    const auto felling = fell_all(run.states_pre[i_tau]);
    const auto felling_value = harvest_value(felling.harvest, in.econ);
    samples.back().k_after = in.econ.land_value;
    events.push_back({tau_months, EventKind::felling, -felling_value.net});

    Trajectory traj = build_trajectory(samples, events, in.finance);

    // the prefix carries the analytic derivative of the exponential, not the
    // segment secant
    for (auto& p : traj.points) {
        if (p.age_months > run.boot.handoff_age_months + 1e-9) break;
        const double dk = run.boot.dkdt_per_year_at(p.age_months) - in.finance.annual_expense -
                          in.finance.amortization_rate * (p.k_after > 0.0 ? p.k_after : p.k_before);
        p.dkdt_before = dk;
        if (p.age_months < run.boot.handoff_age_months - 1e-9) p.dkdt_after = dk;
    }
    traj.rotation_months = tau_months;
    return traj;
}

// Observables behind the result figures, for one closed rotation.
struct FigureData {
    std::vector<std::pair<double, double>> diameter_series; // (age months, ba-weighted cm)
    std::vector<ThinningEventRecord> thinnings;
    double maturity_diameter_cm = 0.0; // at rotation age, before felling
    double final_felling_net = 0.0;
};

inline FigureData figure_data(const HorizonRun& run, double tau_months, const ModelInputs& in) {
    FigureData fd;
    size_t i_tau = run.samples.size();
    for (size_t i = 0; i < run.samples.size(); ++i) {
        if (run.samples[i].age_months > tau_months + 1e-6) break;
        if (auto d = ba_weighted_mean_diameter_cm(run.states_post[i]))
            fd.diameter_series.emplace_back(run.samples[i].age_months, *d);
        if (std::abs(run.samples[i].age_months - tau_months) < 1e-6) {
            i_tau = i;
            if (auto d = ba_weighted_mean_diameter_cm(run.states_pre[i]))
                fd.maturity_diameter_cm = *d;
        }
    }
    if (i_tau == run.samples.size())
        throw simulation_error("rotation age does not fall on a simulated sample");
    for (const auto& ev : run.thinnings)
        if (ev.age_months < tau_months - 1e-6) fd.thinnings.push_back(ev);
    const auto felling = fell_all(run.states_pre[i_tau]);
    fd.final_felling_net = harvest_value(felling.harvest, in.econ).net;
    return fd;
}

struct SimulationResult {
    Trajectory trajectory;
    FigureData figures;
    HorizonRun run;
};

// Full pipeline for one stand, one policy, one rotation age.
inline SimulationResult simulate_rotation(const BootstrapSpec& boot_spec,
                                          const PolicySpec& policy,
                                          const ScenarioConfig& scenario,
                                          const ModelInputs& in) {
    if (policy.rotation_months < boot_spec.handoff_age_months)
        throw config_error("rotation age must not precede the handoff age");
    HorizonRun run =
        simulate_to_horizon(boot_spec, policy, scenario, in, policy.rotation_months);
    SimulationResult res{rotation_trajectory(run, policy.rotation_months, in),
                         figure_data(run, policy.rotation_months, in), std::move(run)};
    return res;
}

// Discretized policy search space; exhaustive evaluation.
struct SearchSpace {
    std::vector<std::optional<double>> ba_triggers{std::nullopt}; // nullopt = never thin
    std::vector<int> pivots{4};
    std::vector<double> slopes{0.5};
    std::vector<double> depths{1.0};
    double striproad_survival = 0.85;
    int max_thinnings = 2;
    std::vector<double> rotations_months;

    void validate() const {
        if (ba_triggers.empty() || pivots.empty() || slopes.empty() || depths.empty() ||
            rotations_months.empty())
            throw config_error("policy search space must not be empty");
    }
};

struct CurvePoint {
    double rotation_months = 0.0;
    double expected_rate = 0.0;
};

struct OptimizeResult {
    PolicySpec best_policy;           // rotation_months set to the argmax
    double best_rate = 0.0;
    std::vector<CurvePoint> curve;    // best rate over policies, per rotation age
    long policies_evaluated = 0;
};

// Exhaustive grid search over policies and rotation ages, maximizing the
// expected return rate on capital. Deterministic: ties keep the first
// candidate in enumeration order (triggers, pivots, slopes, depths,
// rotations as listed).
inline OptimizeResult optimize(const BootstrapSpec& boot_spec, const ScenarioConfig& scenario,
                               const ModelInputs& in, const SearchSpace& space) {
    space.validate();
    OptimizeResult res;
    res.best_rate = -std::numeric_limits<double>::infinity();
    res.curve.reserve(space.rotations_months.size());
    for (double tau : space.rotations_months)
        res.curve.push_back({tau, -std::numeric_limits<double>::infinity()});

    const double horizon =
        *std::max_element(space.rotations_months.begin(), space.rotations_months.end());

    auto consider = [&](const PolicySpec& policy) {
        HorizonRun run = simulate_to_horizon(boot_spec, policy, scenario, in, horizon);
        ++res.policies_evaluated;
        for (size_t ti = 0; ti < space.rotations_months.size(); ++ti) {
            const double tau = space.rotations_months[ti];
            if (tau < run.boot.handoff_age_months) continue;
            double r;
            try {
                r = expected_rate(rotation_trajectory(run, tau, in));
            } catch (const simulation_error&) {
                continue; // candidate degenerates (e.g. thinned down to worthless)
            }
            if (r > res.curve[ti].expected_rate) res.curve[ti].expected_rate = r;
            if (r > res.best_rate) {
                res.best_rate = r;
                res.best_policy = policy;
                res.best_policy.rotation_months = tau;
            }
        }
    };

    for (const auto& trigger : space.ba_triggers) {
        PolicySpec policy;
        policy.ba_trigger_m2ha = trigger;
        policy.striproad_survival = space.striproad_survival;
        policy.max_thinnings = space.max_thinnings;
        if (!trigger) {
            consider(policy); // removal parameters are irrelevant without a trigger
            continue;
        }
        for (int pivot : space.pivots)
            for (double slope : space.slopes)
                for (double depth : space.depths) {
                    policy.pivot_class = pivot;
                    policy.taper_slope = slope;
                    policy.depth = depth;
                    consider(policy);
                }
    }
    if (!std::isfinite(res.best_rate))
        throw simulation_error("optimize: every candidate policy degenerates");
    return res;
}

} // namespace standopt
