#pragma once

#include <array>
#include <vector>

#include "standopt/grid.hpp"
#include "standopt/species.hpp"

namespace standopt {

// Post-mortality stem flows of one growth step: nt[c] moved from class c to
// c+1, nr[c] stayed in class c. The top class never emits (absorbing).
struct TransitionRecord {
    int n_classes = 0;
    std::array<std::vector<double>, kSpeciesCount> nt;
    std::array<std::vector<double>, kSpeciesCount> nr;

    explicit TransitionRecord(int n = 0) : n_classes(n) {
        for (auto& v : nt) v.assign(n, 0.0);
        for (auto& v : nr) v.assign(n, 0.0);
    }

    double moved(Species s, int c) const { return nt[species_index(s)][c]; }
    double stayed(Species s, int c) const { return nr[species_index(s)][c]; }
};

// Stems-weighted advection of a per-class coefficient across one transition:
// the new coefficient of class d mixes the incoming trees' coefficient with
// the remaining trees' one. Classes that end up empty keep their previous
// value.
inline std::vector<double> propagate_coefficients(const TransitionRecord& rec, Species sp,
                                                  const std::vector<double>& coeff) {
    const int n = rec.n_classes;
    std::vector<double> out(coeff);
    for (int d = 0; d < n; ++d) {
        const double in = d > 0 ? rec.moved(sp, d - 1) : 0.0;
        const double stay = rec.stayed(sp, d);
        const double denom = in + stay;
        if (denom <= 0.0) continue;
        const double c_in = d > 0 ? coeff[d - 1] : 0.0;
        out[d] = (in * c_in + stay * coeff[d]) / denom;
    }
    return out;
}

} // namespace standopt
