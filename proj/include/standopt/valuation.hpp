#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <vector>

#include "standopt/quality.hpp"
#include "standopt/stand.hpp"

namespace standopt {

// Expected assortment volumes per stem, by species and diameter class.
struct AssortmentYield {
    double v_pulp_m3 = 0.0;
    double v_saw_m3 = 0.0;
    double total() const { return v_pulp_m3 + v_saw_m3; }
};

class AssortmentYieldTable {
  public:
    void set(Species sp, int class_index, AssortmentYield y) {
        rows_[key(sp, class_index)] = y;
    }
    const AssortmentYield& at(Species sp, int class_index) const {
        auto it = rows_.find(key(sp, class_index));
        if (it == rows_.end())
            throw table_error("assortment yield table has no row for species=" +
                              std::string(species_name(sp)) +
                              " class=" + std::to_string(class_index));
        return it->second;
    }
    bool has(Species sp, int class_index) const {
        return rows_.count(key(sp, class_index)) > 0;
    }

  private:
    static long key(Species sp, int c) { return static_cast<long>(species_index(sp)) * 1000 + c; }
    std::map<long, AssortmentYield> rows_;
};

struct SpeciesPrices {
    double pulp_per_m3 = 0.0;
    double saw_per_m3 = 0.0;
};

struct PriceTable {
    std::array<SpeciesPrices, kSpeciesCount> by_species;
    const SpeciesPrices& operator[](Species s) const { return by_species[species_index(s)]; }
    SpeciesPrices& operator[](Species s) { return by_species[species_index(s)]; }
};

// Harvesting cost: a per-stem handling cost and a per-volume cost, both by
// diameter class, plus a fixed entry cost per operation. The per-volume unit
// cost is non-increasing in diameter (big stems are cheaper to process per
// cubic meter).
struct HarvestCostModel {
    std::vector<double> per_stem;  // currency/stem, by class
    std::vector<double> per_m3;    // currency/m3, by class
    double entry_per_operation = 0.0; // currency/ha

    void check_class(int c) const {
        if (c < 0 || c >= static_cast<int>(per_stem.size()) ||
            c >= static_cast<int>(per_m3.size()))
            throw table_error("harvest cost table has no row for class=" + std::to_string(c));
    }
};

enum class CapitalizationBasis { net_roadside, gross_roadside };

struct EconTables {
    AssortmentYieldTable yields;
    PriceTable prices;
    HarvestCostModel costs;
    CapitalizationBasis basis = CapitalizationBasis::net_roadside;
    double land_value = 0.0; // constant addend to capitalization, per ha
};

// Roadside price of one trunk: pulp term plus the quality-scaled sawlog
// term. Quality contributes only when the tree carries sawlog volume and
// the sawlog price is nonzero.
inline double tree_price(Species sp, int class_index, double quality_j,
                         const AssortmentYieldTable& yields, const PriceTable& prices) {
    const auto& y = yields.at(sp, class_index);
    const auto& p = prices[sp];
    return y.v_pulp_m3 * p.pulp_per_m3 + y.v_saw_m3 * quality_j * p.saw_per_m3;
}

// Estimated cost of removing n stems of one class, excluding the operation
// entry cost.
inline double class_harvest_cost(Species sp, int class_index, double stems,
                                 const AssortmentYieldTable& yields,
                                 const HarvestCostModel& costs) {
    costs.check_class(class_index);
    const auto& y = yields.at(sp, class_index);
    return stems * costs.per_stem[class_index] + stems * y.total() * costs.per_m3[class_index];
}

// Stand capitalization per hectare: trees at roadside price less estimated
// harvesting cost, floored at zero class by class (a class that costs more
// to harvest than it returns carries no balance-sheet value). The operation
// entry cost is not charged to a standing valuation.
inline double stand_value(const StandState& st, const EconTables& econ) {
    double total = 0.0;
    for (Species sp : all_species)
        for (int c = 0; c < st.grid().n_classes(); ++c) {
            const double n = st.cell(sp, c).stems;
            if (n <= 0.0) continue;
            double v = n * tree_price(sp, c, st.cell(sp, c).quality, econ.yields, econ.prices);
            if (econ.basis == CapitalizationBasis::net_roadside)
                v = std::max(0.0, v - class_harvest_cost(sp, c, n, econ.yields, econ.costs));
            total += v;
        }
    return total + econ.land_value;
}

struct HarvestValuation {
    double gross = 0.0; // currency/ha
    double cost = 0.0;
    double net = 0.0;
};

// Price a harvest: removed stems at their mean quality, minus the actual
// operation cost (entry cost included).
inline HarvestValuation harvest_value(const HarvestRecord& rec, const EconTables& econ) {
    HarvestValuation v;
    if (rec.empty()) return v;
    v.cost = econ.costs.entry_per_operation;
    for (const auto& r : rec.removals) {
        v.gross += r.stems * tree_price(r.species, r.class_index, r.quality, econ.yields,
                                        econ.prices);
        v.cost += class_harvest_cost(r.species, r.class_index, r.stems, econ.yields, econ.costs);
    }
    v.net = v.gross - v.cost;
    return v;
}

} // namespace standopt
