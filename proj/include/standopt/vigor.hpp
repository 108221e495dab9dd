#pragma once

#include <vector>

#include "standopt/growth.hpp"
#include "standopt/stand.hpp"

namespace standopt {

struct VigorParams {
    double alpha = 0.5;
    double application_age_offset_months = 90.0;
};

// Inherited production capacity of a tree of diameter d within a stand of
// mean diameter mean_d: m = alpha * d/<d> + (1 - alpha). The stem-weighted
// mean of m over the stand is 1 for any alpha.
inline double raw_capacity(double d_mm, double mean_d_mm, double alpha) {
    if (mean_d_mm <= 0.0)
        throw std::domain_error("raw_capacity: mean diameter must be positive (empty stand?)");
    if (d_mm < 0.0) throw std::domain_error("raw_capacity: diameter must be >= 0");
    return alpha * d_mm / mean_d_mm + (1.0 - alpha);
}

// Per-class capacity coefficients for the whole grid, from the stem-weighted
// mean diameter of all trees on the site (species pooled).
inline std::vector<double> capacity_coefficients(const StandState& st, double alpha) {
    const auto mean_d = stem_weighted_mean_diameter_mm(st);
    if (!mean_d)
        throw simulation_error("capacity coefficients undefined for an empty stand");
    const int n = st.grid().n_classes();
    std::vector<double> m(n);
    for (int c = 0; c < n; ++c) m[c] = raw_capacity(st.grid().midpoint(c), *mean_d, alpha);
    return m;
}

// Bias correction of the capacity coefficients: probe one growth step with
// and without m applied and rescale so the stand basal-area growth matches
// the uncorrected model. The probes compare the transition-driven growth
// component; mortality is identical in both and cancels, which makes the
// conservation exact rather than approximate.
inline std::vector<double> normalize_capacity(const StandState& state,
                                              const std::vector<double>& m,
                                              const GrowthCoefficients& coeffs,
                                              const ScenarioConfig& scenario) {
    if (state.empty())
        throw simulation_error("normalize_capacity: empty stand");

    StandState plain = state;
    StandState scaled = state;
    for (Species sp : all_species)
        for (int c = 0; c < state.grid().n_classes(); ++c) {
            plain.cell(sp, c).vigor = 1.0;
            scaled.cell(sp, c).vigor = m[c];
        }

    const double g0 = transition_growth_m2ha(state.grid(), step(plain, coeffs, scenario).record);
    const double gm = transition_growth_m2ha(state.grid(), step(scaled, coeffs, scenario).record);
    if (gm <= 0.0)
        throw simulation_error("normalize_capacity: stand basal area is not growing; "
                               "capacity normalization is undefined");

    const double ratio = g0 / gm;
    std::vector<double> n(m.size());
    for (size_t i = 0; i < m.size(); ++i) n[i] = m[i] * ratio;
    return n;
}

// Assign vigor coefficients to a stand at the application age. In the
// coupled scenario the raw capacity m also scales the quality coefficient;
// the growth correction itself uses the normalized n.
inline void apply_vigor_assignment(StandState& state, const GrowthCoefficients& coeffs,
                                   const ScenarioConfig& scenario) {
    if (!scenario.vigor_active()) return;
    const auto m = capacity_coefficients(state, scenario.alpha);
    const auto n = normalize_capacity(state, m, coeffs, scenario);
    for (Species sp : all_species)
        for (int c = 0; c < state.grid().n_classes(); ++c) {
            state.cell(sp, c).vigor = n[c];
            if (scenario.vigor_scales_quality()) state.cell(sp, c).quality *= m[c];
        }
}

} // namespace standopt
