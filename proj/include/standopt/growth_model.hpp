#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "standopt/errors.hpp"
#include "standopt/stand.hpp"

namespace standopt {

// The growth model is linear in its parameters: each term is
// value * covariate^exponent over a named covariate. Covariates are either
// built in (one, diameter_mm, stand_ba_m2ha, stems_total_per_ha) or looked
// up in the stand's site covariates (site_index, latitude, ...).
struct FormulaTerm {
    std::string name;
    std::string covariate;
    double exponent = 1.0;
    double value = 0.0;
};

struct SpeciesCoefficients {
    std::vector<FormulaTerm> increment; // mm per step
    std::vector<FormulaTerm> mortality; // logit of per-step mortality probability
};

inline constexpr const char* kGrowthFormId = "increment-linear/mortality-logistic/v1";

struct GrowthCoefficients {
    std::string form_id = kGrowthFormId;
    std::string provenance;
    std::array<SpeciesCoefficients, kSpeciesCount> by_species;

    const SpeciesCoefficients& operator[](Species s) const {
        return by_species[species_index(s)];
    }
    SpeciesCoefficients& operator[](Species s) { return by_species[species_index(s)]; }
};

namespace detail {

// covariates shared by every cell of one evaluation
struct StandMetrics {
    double ba_m2ha = 0.0;
    double stems_per_ha = 0.0;
};

inline StandMetrics stand_metrics(const StandState& st) {
    return {basal_area(st), st.total_stems()};
}

inline double covariate_value(const std::string& name, double diameter_mm,
                              const StandMetrics& m, const StandState& st) {
    if (name == "one") return 1.0;
    if (name == "diameter_mm") return diameter_mm;
    if (name == "stand_ba_m2ha") return m.ba_m2ha;
    if (name == "stems_total_per_ha") return m.stems_per_ha;
    auto it = st.site_covariates().find(name);
    if (it == st.site_covariates().end())
        throw config_error("growth model requires site covariate '" + name +
                           "' which is not configured");
    return it->second;
}

inline double term_power(double v, double e) {
    if (e == 0.0) return 1.0;
    if (e == 1.0) return v;
    if (e == 2.0) return v * v;
    return std::pow(v, e);
}

inline double evaluate_terms(const std::vector<FormulaTerm>& terms, double diameter_mm,
                             const StandMetrics& m, const StandState& st) {
    double acc = 0.0;
    for (const auto& t : terms)
        acc += t.value * term_power(covariate_value(t.covariate, diameter_mm, m, st), t.exponent);
    return acc;
}

} // namespace detail

// Expected diameter increment (mm per step) for a tree at the class midpoint,
// before any vigor/quality scaling. Valid for empty classes too.
inline double predict_increment(const StandState& st, Species sp, int class_index,
                                const GrowthCoefficients& coeffs) {
    const auto metrics = detail::stand_metrics(st);
    const double d = st.grid().midpoint(class_index);
    const double raw = detail::evaluate_terms(coeffs[sp].increment, d, metrics, st);
    return raw > 0.0 ? raw : 0.0;
}

// Per-step survival probability. An empty mortality term list means no
// modeled mortality (survival 1), not a 0.5 logistic baseline.
inline double survival_probability(const StandState& st, Species sp, int class_index,
                                   const GrowthCoefficients& coeffs) {
    const auto& terms = coeffs[sp].mortality;
    if (terms.empty()) return 1.0;
    const auto metrics = detail::stand_metrics(st);
    const double d = st.grid().midpoint(class_index);
    const double z = detail::evaluate_terms(terms, d, metrics, st);
    const double mortality = 1.0 / (1.0 + std::exp(-z));
    return 1.0 - mortality;
}

} // namespace standopt
