#pragma once

#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "standopt/grid.hpp"
#include "standopt/species.hpp"

namespace standopt {

// One (species, diameter class) cohort. Stem counts are real-valued: the
// matrix model is deterministic in expectation. vigor and quality are the
// per-class correction coefficients multiplying the diameter increment and
// the sawlog unit price respectively. prev_increment holds the raw model
// prediction of the preceding step and is empty before the first step.
struct CohortCell {
    double stems = 0.0;   // 1/ha
    double vigor = 1.0;
    double quality = 1.0;
    std::optional<double> prev_increment; // mm per step, unscaled
};

class StandState {
  public:
    StandState() = default;
    StandState(DiameterGrid grid, std::map<std::string, double> site_covariates = {},
               double age_months = 0.0)
        : grid_(std::move(grid)), age_months_(age_months),
          site_(std::move(site_covariates)), cells_(kSpeciesCount * grid_.n_classes()) {}

    const DiameterGrid& grid() const { return grid_; }
    double age_months() const { return age_months_; }
    void set_age_months(double a) { age_months_ = a; }

    const std::map<std::string, double>& site_covariates() const { return site_; }

    CohortCell& cell(Species s, int c) { return cells_[species_index(s) * grid_.n_classes() + c]; }
    const CohortCell& cell(Species s, int c) const {
        return cells_[species_index(s) * grid_.n_classes() + c];
    }

    double total_stems() const {
        double n = 0.0;
        for (const auto& c : cells_) n += c.stems;
        return n;
    }

    double species_stems(Species s) const {
        double n = 0.0;
        for (int c = 0; c < grid_.n_classes(); ++c) n += cell(s, c).stems;
        return n;
    }

    bool empty() const { return total_stems() <= 0.0; }

  private:
    DiameterGrid grid_;
    double age_months_ = 0.0;
    std::map<std::string, double> site_;
    std::vector<CohortCell> cells_;
};

// cross-sectional area of one stem at the class midpoint, m^2
inline double stem_area_m2(const DiameterGrid& g, int c) {
    const double d_m = g.midpoint(c) / 1000.0;
    return std::numbers::pi / 4.0 * d_m * d_m;
}

inline double class_basal_area(const StandState& st, Species s, int c) {
    return st.cell(s, c).stems * stem_area_m2(st.grid(), c);
}

// stand basal area, m^2/ha
inline double basal_area(const StandState& st) {
    double ba = 0.0;
    for (Species s : all_species)
        for (int c = 0; c < st.grid().n_classes(); ++c) ba += class_basal_area(st, s, c);
    return ba;
}

// basal area-weighted mean diameter in cm; empty for an empty stand
inline std::optional<double> ba_weighted_mean_diameter_cm(const StandState& st) {
    double num = 0.0, den = 0.0;
    for (Species s : all_species)
        for (int c = 0; c < st.grid().n_classes(); ++c) {
            const double ba = class_basal_area(st, s, c);
            num += ba * st.grid().midpoint(c);
            den += ba;
        }
    if (den <= 0.0) return std::nullopt;
    return num / den / 10.0;
}

// stem count-weighted mean diameter over all trees on the site, mm
inline std::optional<double> stem_weighted_mean_diameter_mm(const StandState& st) {
    double num = 0.0, den = 0.0;
    for (Species s : all_species)
        for (int c = 0; c < st.grid().n_classes(); ++c) {
            const double n = st.cell(s, c).stems;
            num += n * st.grid().midpoint(c);
            den += n;
        }
    if (den <= 0.0) return std::nullopt;
    return num / den;
}

} // namespace standopt
