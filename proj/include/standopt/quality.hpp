#pragma once

#include <vector>

#include "standopt/scenario.hpp"
#include "standopt/stand.hpp"

namespace standopt {

struct QualityParams {
    double half_width_b = 0.5; // relative limits of the uniform quality distribution
};

// Per-class survival of one harvesting operation. total_survival is the
// fraction left standing after the whole operation; striproad_survival is
// the fraction left after opening strip roads but before quality selection
// (1 when roads already exist). Quality selection cannot resurrect trees,
// so s <= a per class.
struct ThinningSpec {
    std::vector<double> total_survival;  // per class
    double striproad_survival = 1.0;     // stand level
};

// Survival rate in the quality-selection stage once the non-selective
// strip-road removal is accounted for.
inline double quality_survival(double s, double a) {
    if (a <= 0.0 || a > 1.0)
        throw std::invalid_argument("quality_survival: strip-road survival must be in (0,1]");
    if (s < 0.0 || s > a)
        throw std::invalid_argument(
            "quality_survival: total survival must satisfy 0 <= s <= a (quality thinning "
            "cannot create trees)");
    return s / a;
}

// Value correction for the trees remaining after quality thinning with
// survival p, for a uniform quality distribution of half-width b.
inline double quality_correction(double p, double b) {
    return 1.0 + b * (1.0 - p);
}

// Mean quality (relative to the class coefficient) of the removed trees:
// the strip-road stage removes at the class mean, the selection stage takes
// the worst. Complements quality_correction so that class value is conserved
// across the split.
inline double removed_quality_factor(double s, double a, double b) {
    if (s >= 1.0) return 1.0; // nothing removed
    const double p = quality_survival(s, a);
    return ((1.0 - a) + a * (1.0 - p) * (1.0 - b * p)) / (1.0 - s);
}

// Per-class removal of one harvesting operation. Stems are counts per
// hectare; quality is the mean quality coefficient of the removed trees.
// Volumes and money are attached by the valuation layer.
struct HarvestRemoval {
    Species species = Species::spruce;
    int class_index = 0;
    double stems = 0.0;
    double quality = 1.0;
};

struct HarvestRecord {
    double age_months = 0.0;
    std::vector<HarvestRemoval> removals;

    bool empty() const { return removals.empty(); }
    double total_stems() const {
        double n = 0.0;
        for (const auto& r : removals) n += r.stems;
        return n;
    }
};

struct ThinningResult {
    StandState state;
    HarvestRecord harvest;
};

// Execute one thinning: scale stems by the per-class total survival and
// credit survivors with the quality correction (when the scenario models
// quality at all). Classes with s = a see pure strip-road removal and keep
// their quality unchanged.
inline ThinningResult apply_thinning(const StandState& state, const ThinningSpec& spec,
                                     const ScenarioConfig& scenario) {
    const int n = state.grid().n_classes();
    if (static_cast<int>(spec.total_survival.size()) != n)
        throw std::invalid_argument("apply_thinning: survival profile does not match grid");

    const double a = spec.striproad_survival;
    const double b = scenario.quality_active() ? scenario.quality_half_width : 0.0;

    ThinningResult res{state, {}};
    res.harvest.age_months = state.age_months();

    for (Species sp : all_species)
        for (int c = 0; c < n; ++c) {
            const double s = spec.total_survival[c];
            const double p = quality_survival(s, a);
            CohortCell& cell = res.state.cell(sp, c);
            const double removed = cell.stems * (1.0 - s);
            if (removed > 0.0) {
                res.harvest.removals.push_back(
                    {sp, c, removed, cell.quality * removed_quality_factor(s, a, b)});
            }
            cell.stems *= s;
            if (scenario.quality_active()) cell.quality *= quality_correction(p, b);
        }
    return res;
}

// Final felling: everything goes at the standing quality.
inline ThinningResult fell_all(const StandState& state) {
    ThinningResult res{state, {}};
    res.harvest.age_months = state.age_months();
    for (Species sp : all_species)
        for (int c = 0; c < state.grid().n_classes(); ++c) {
            CohortCell& cell = res.state.cell(sp, c);
            if (cell.stems > 0.0)
                res.harvest.removals.push_back({sp, c, cell.stems, cell.quality});
            cell.stems = 0.0;
        }
    return res;
}

} // namespace standopt
