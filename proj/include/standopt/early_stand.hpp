#pragma once

#include <cmath>
#include <vector>

#include "standopt/finance.hpp"
#include "standopt/stand.hpp"
#include "standopt/valuation.hpp"

namespace standopt {

// Pre-model stand phase: from planting to the age at which breast-height
// diameters reach the two lowest populated classes and the growth model
// takes over. Capitalization over this phase is an exponential bridge from
// the regeneration investment to the handoff valuation.
struct BootstrapSpec {
    Species species = Species::spruce;
    double planting_density = 2400.0;   // stems/ha
    double handoff_age_months = 240.0;
    double handoff_split_low = 0.5;     // fraction into the lower of the two classes
    int handoff_first_class = 1;        // index of the lower populated class
    double regeneration_cost = 0.0;     // currency/ha, invested at age 0

    void validate() const {
        if (planting_density <= 0.0) throw config_error("planting density must be positive");
        if (handoff_age_months <= 0.0) throw config_error("handoff age must be positive");
        if (handoff_split_low < 0.0 || handoff_split_low > 1.0)
            throw config_error("handoff split must be a fraction in [0,1]");
        if (regeneration_cost <= 0.0)
            throw config_error("regeneration cost must be positive (it is the initial capital)");
    }
};

struct BootstrapResult {
    StandState handoff_state;
    double handoff_age_months = 0.0;
    double k0 = 0.0;                 // capitalization right after regeneration
    double handoff_value = 0.0;      // valuation of the handoff state
    double growth_rate_per_month = 0.0; // g of K(a) = k0 exp(g a)

    double k_at(double age_months) const {
        return k0 * std::exp(growth_rate_per_month * age_months);
    }
    double dkdt_per_year_at(double age_months) const {
        return growth_rate_per_month * 12.0 * k_at(age_months);
    }
};

// Build the handoff state (planting density split across the two lowest
// populated classes, no pre-model mortality) and fit the exponential
// capitalization prefix to it.
inline BootstrapResult bootstrap(const BootstrapSpec& spec, const DiameterGrid& grid,
                                 const std::map<std::string, double>& site,
                                 const EconTables& econ) {
    spec.validate();
    const int c0 = spec.handoff_first_class;
    if (c0 < 0 || c0 + 1 >= grid.n_classes())
        throw config_error("handoff classes fall outside the diameter grid");

    BootstrapResult res;
    res.handoff_state = StandState(grid, site, spec.handoff_age_months);
    res.handoff_state.cell(spec.species, c0).stems =
        spec.planting_density * spec.handoff_split_low;
    res.handoff_state.cell(spec.species, c0 + 1).stems =
        spec.planting_density * (1.0 - spec.handoff_split_low);

    res.handoff_age_months = spec.handoff_age_months;
    res.k0 = spec.regeneration_cost;
    res.handoff_value = stand_value(res.handoff_state, econ) - econ.land_value;
    if (res.handoff_value <= 0.0)
        throw simulation_error(
            "bootstrap: handoff stand valuation is not positive; cannot fit an exponential "
            "value path (check prices, costs and regeneration cost)");

    res.growth_rate_per_month =
        std::log(res.handoff_value / res.k0) / spec.handoff_age_months;
    return res;
}

// Capitalization samples of the exponential prefix on the step grid, from
// age 0 up to and including the handoff age. The caller appends the model
// phase and the regeneration investment event.
inline std::vector<TrajectoryPoint> bootstrap_prefix_points(const BootstrapResult& boot,
                                                            double step_months,
                                                            double land_value,
                                                            const FinanceParams& fin = {}) {
    std::vector<TrajectoryPoint> pts;
    for (double age = 0.0; age < boot.handoff_age_months - 1e-9; age += step_months) {
        const double k = boot.k_at(age) + land_value;
        const double dk = boot.dkdt_per_year_at(age) - fin.annual_expense -
                          fin.amortization_rate * k;
        pts.push_back({age, k, k, dk, dk});
    }
    const double kh = boot.handoff_value + land_value;
    const double dkh = boot.dkdt_per_year_at(boot.handoff_age_months) - fin.annual_expense -
                       fin.amortization_rate * kh;
    pts.push_back({boot.handoff_age_months, kh, kh, dkh, dkh});
    pts.front().k_before = 0.0; // capital appears with the regeneration investment
    return pts;
}

} // namespace standopt
