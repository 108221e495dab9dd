#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "standopt/growth_model.hpp"
#include "standopt/stand.hpp"
#include "standopt/valuation.hpp"

namespace testutil {

using namespace standopt;

// density-independent coefficient set: constant increment, constant survival
inline GrowthCoefficients const_coeffs(double increment_mm,
                                       double survival = 1.0) {
    GrowthCoefficients g;
    g.provenance = "test fixture";
    for (Species sp : all_species) {
        g[sp].increment = {{"intercept", "one", 0.0, increment_mm}};
        if (survival < 1.0) {
            // logit of the mortality probability
            const double z = std::log((1.0 - survival) / survival);
            g[sp].mortality = {{"intercept", "one", 0.0, z}};
        }
    }
    return g;
}

struct CohortInit {
    Species species;
    int class_index;
    double stems;
};

inline StandState make_stand(const DiameterGrid& grid, const std::vector<CohortInit>& cohorts,
                             std::map<std::string, double> site = {}) {
    StandState st(grid, std::move(site));
    for (const auto& c : cohorts) st.cell(c.species, c.class_index).stems = c.stems;
    return st;
}

// stems chosen so the class carries exactly the requested basal area
inline double stems_for_ba(const DiameterGrid& grid, int c, double ba_m2ha) {
    return ba_m2ha / stem_area_m2(grid, c);
}

// flat-price economics with no harvesting costs, handy for ledger checks
inline EconTables simple_econ(double pulp_price, double saw_price, int n_classes,
                              const DiameterGrid& grid, double v_pulp, double v_saw,
                              int saw_from_class) {
    EconTables econ;
    for (Species sp : all_species) {
        econ.prices[sp] = {pulp_price, saw_price};
        for (int c = 0; c < n_classes; ++c)
            econ.yields.set(sp, c, {v_pulp, c >= saw_from_class ? v_saw : 0.0});
    }
    econ.costs.per_stem.assign(n_classes, 0.0);
    econ.costs.per_m3.assign(n_classes, 0.0);
    (void)grid;
    return econ;
}

inline std::mt19937& rng() {
    static std::mt19937 gen(20240811u);
    return gen;
}

} // namespace testutil
