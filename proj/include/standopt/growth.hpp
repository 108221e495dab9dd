#pragma once

#include <algorithm>
#include <vector>

#include "standopt/growth_model.hpp"
#include "standopt/scenario.hpp"
#include "standopt/stand.hpp"
#include "standopt/transition.hpp"

namespace standopt {

// History smoothing of the predicted increment rate. In non-Markovian mode
// the prediction is averaged with the one made for the preceding step; the
// first step, having no history, uses the raw prediction.
inline double effective_increment(const CohortCell& cell, double raw, GrowthMode mode) {
    if (mode == GrowthMode::markov || !cell.prev_increment) return raw;
    return 0.5 * (raw + *cell.prev_increment);
}

struct StepResult {
    StandState state;
    TransitionRecord record;
};

// One matrix-model step. Per cohort: mortality first, then the survivors
// split between moving up one class and staying, with the moving fraction
// f = scaled increment / class width capped at 1 (no class skipping). The
// top class is absorbing. vigor and quality coefficients are advected with
// the stems. prev_increment is refreshed with the raw model prediction.
inline StepResult step(const StandState& state, const GrowthCoefficients& coeffs,
                       const ScenarioConfig& scenario) {
    const auto& grid = state.grid();
    const int n = grid.n_classes();
    StepResult res{state, TransitionRecord(n)};
    StandState& next = res.state;

    const auto metrics = detail::stand_metrics(state);

    for (Species sp : all_species) {
        std::vector<double> vig(n), qual(n);
        for (int c = 0; c < n; ++c) {
            const CohortCell& cell = state.cell(sp, c);
            vig[c] = cell.vigor;
            qual[c] = cell.quality;

            const double d = grid.midpoint(c);
            double raw = detail::evaluate_terms(coeffs[sp].increment, d, metrics, state);
            raw = std::max(raw, 0.0);
            const double eff = effective_increment(cell, raw, scenario.growth);

            double scaled = eff * cell.vigor;
            if (scenario.quality_scales_growth()) scaled *= cell.quality;

            const double f = c + 1 < n ? std::min(scaled / grid.class_width(), 1.0) : 0.0;
            const double surv = survival_probability(state, sp, c, coeffs);
            const double survivors = cell.stems * surv;
            const double moved = survivors * f;
            const double stayed = survivors - moved; // exact split, no mass drift

            res.record.nt[species_index(sp)][c] = moved;
            res.record.nr[species_index(sp)][c] = stayed;
            next.cell(sp, c).prev_increment = raw;
        }

        for (int c = 0; c < n; ++c) {
            const double in = c > 0 ? res.record.moved(sp, c - 1) : 0.0;
            next.cell(sp, c).stems = res.record.stayed(sp, c) + in;
        }
        const auto new_vig = propagate_coefficients(res.record, sp, vig);
        const auto new_qual = propagate_coefficients(res.record, sp, qual);
        for (int c = 0; c < n; ++c) {
            next.cell(sp, c).vigor = new_vig[c];
            next.cell(sp, c).quality = new_qual[c];
        }
    }

    next.set_age_months(state.age_months() + scenario.step_months);
    return res;
}

// Basal-area gain contributed by the step's upward transitions, m^2/ha.
// Mortality does not enter: this isolates the increment-driven part of the
// stand basal area change.
inline double transition_growth_m2ha(const DiameterGrid& grid, const TransitionRecord& rec) {
    double g = 0.0;
    for (Species sp : all_species)
        for (int c = 0; c + 1 < rec.n_classes; ++c)
            g += rec.moved(sp, c) * (stem_area_m2(grid, c + 1) - stem_area_m2(grid, c));
    return g;
}

} // namespace standopt
