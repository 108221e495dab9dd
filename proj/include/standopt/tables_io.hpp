#pragma once

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "standopt/growth_model.hpp"
#include "standopt/valuation.hpp"

namespace standopt {
namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(trim(field));
    return out;
}

inline double parse_double(const std::string& s, const std::string& where) {
    try {
        size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw table_error(where + ": cannot parse number '" + s + "'");
    }
}

// A delimited table file: comment lines may carry "key: value" directives,
// the first non-comment line is the header.
struct TableFile {
    std::string path;
    std::vector<std::string> header;
    std::vector<std::pair<int, std::vector<std::string>>> rows; // line number, fields
    std::map<std::string, std::string> directives;
};

inline TableFile read_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw table_error("cannot open table file '" + path + "'");
    TableFile t;
    t.path = path;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string s = trim(line);
        if (s.empty()) continue;
        if (s[0] == '#') {
            const auto colon = s.find(':');
            if (colon != std::string::npos) {
                const std::string key = trim(s.substr(1, colon - 1));
                if (!key.empty()) t.directives[key] = trim(s.substr(colon + 1));
            }
            continue;
        }
        if (t.header.empty())
            t.header = split_csv(s);
        else
            t.rows.emplace_back(lineno, split_csv(s));
    }
    if (t.header.empty()) throw table_error("table file '" + path + "' has no header row");
    return t;
}

inline void expect_header(const TableFile& t, const std::vector<std::string>& expected) {
    if (t.header != expected) {
        std::string want;
        for (const auto& h : expected) want += (want.empty() ? "" : ",") + h;
        throw table_error(t.path + ": unexpected header (expected '" + want + "')");
    }
}

inline std::string row_context(const TableFile& t, int lineno) {
    return t.path + ":" + std::to_string(lineno);
}

} // namespace detail

// ---------------------------------------------------------------------------
// growth coefficient table
//
//   # form: increment-linear/mortality-logistic/v1
//   # provenance: ...
//   model,species,term,covariate,exponent,value
//   increment,spruce,intercept,one,0,4.1
// ---------------------------------------------------------------------------
inline GrowthCoefficients load_growth_coefficients(const std::string& path) {
    const auto t = detail::read_table(path);
    detail::expect_header(t, {"model", "species", "term", "covariate", "exponent", "value"});

    auto form = t.directives.find("form");
    if (form == t.directives.end())
        throw table_error(path + ": missing '# form:' directive declaring the functional form");
    if (form->second != kGrowthFormId)
        throw table_error(path + ": unsupported functional form '" + form->second +
                          "' (this build evaluates '" + kGrowthFormId + "')");

    GrowthCoefficients g;
    g.form_id = form->second;
    if (auto p = t.directives.find("provenance"); p != t.directives.end())
        g.provenance = p->second;

    for (const auto& [lineno, row] : t.rows) {
        const std::string where = detail::row_context(t, lineno);
        if (row.size() != 6) throw table_error(where + ": expected 6 fields");
        const Species sp = species_from_name(row[1]);
        FormulaTerm term{row[2], row[3], detail::parse_double(row[4], where),
                         detail::parse_double(row[5], where)};
        if (row[0] == "increment")
            g[sp].increment.push_back(term);
        else if (row[0] == "mortality")
            g[sp].mortality.push_back(term);
        else
            throw table_error(where + ": model must be 'increment' or 'mortality', got '" +
                              row[0] + "'");
    }
    for (Species sp : all_species)
        if (g[sp].increment.empty())
            throw table_error(path + ": no increment terms for species " +
                              species_name(sp));
    return g;
}

// ---------------------------------------------------------------------------
// assortment yield table
//
//   species,class_lower_mm,v_pulp_m3_per_stem,v_saw_m3_per_stem
// ---------------------------------------------------------------------------
inline AssortmentYieldTable load_yields(const std::string& path, const DiameterGrid& grid,
                                        std::string* provenance = nullptr) {
    const auto t = detail::read_table(path);
    detail::expect_header(t, {"species", "class_lower_mm", "v_pulp_m3_per_stem",
                              "v_saw_m3_per_stem"});
    if (provenance) {
        if (auto p = t.directives.find("provenance"); p != t.directives.end())
            *provenance = p->second;
    }

    std::map<std::pair<int, long>, AssortmentYield> by_lower;
    for (const auto& [lineno, row] : t.rows) {
        const std::string where = detail::row_context(t, lineno);
        if (row.size() != 4) throw table_error(where + ": expected 4 fields");
        const Species sp = species_from_name(row[0]);
        const long lower = std::lround(detail::parse_double(row[1], where));
        const AssortmentYield y{detail::parse_double(row[2], where),
                                detail::parse_double(row[3], where)};
        if (y.v_pulp_m3 < 0.0 || y.v_saw_m3 < 0.0)
            throw table_error(where + ": assortment volumes must be >= 0");
        by_lower[{species_index(sp), lower}] = y;
    }

    AssortmentYieldTable table;
    for (Species sp : all_species) {
        double prev_total = -1.0;
        bool saw_started = false;
        for (int c = 0; c < grid.n_classes(); ++c) {
            const long lower = std::lround(grid.lower(c));
            auto it = by_lower.find({species_index(sp), lower});
            if (it == by_lower.end())
                throw table_error(path + ": missing row for species=" +
                                  std::string(species_name(sp)) +
                                  " class_lower_mm=" + std::to_string(lower));
            const auto& y = it->second;
            if (y.total() < prev_total)
                throw table_error(path + ": total volume decreases with diameter for " +
                                  std::string(species_name(sp)) + " at class_lower_mm=" +
                                  std::to_string(lower));
            if (saw_started && y.v_saw_m3 <= 0.0 && y.total() > 0.0)
                throw table_error(path + ": sawlog volume drops back to zero above the "
                                  "sawlog threshold for " +
                                  std::string(species_name(sp)));
            if (y.v_saw_m3 > 0.0) saw_started = true;
            prev_total = y.total();
            table.set(sp, c, y);
        }
    }
    return table;
}

// ---------------------------------------------------------------------------
// price table
//
//   species,pulp_per_m3,saw_per_m3
// ---------------------------------------------------------------------------
inline PriceTable load_prices(const std::string& path, std::string* provenance = nullptr) {
    const auto t = detail::read_table(path);
    detail::expect_header(t, {"species", "pulp_per_m3", "saw_per_m3"});
    if (provenance) {
        if (auto p = t.directives.find("provenance"); p != t.directives.end())
            *provenance = p->second;
    }
    PriceTable prices;
    std::array<bool, kSpeciesCount> seen{};
    for (const auto& [lineno, row] : t.rows) {
        const std::string where = detail::row_context(t, lineno);
        if (row.size() != 3) throw table_error(where + ": expected 3 fields");
        const Species sp = species_from_name(row[0]);
        SpeciesPrices p{detail::parse_double(row[1], where),
                        detail::parse_double(row[2], where)};
        if (p.pulp_per_m3 < 0.0 || p.saw_per_m3 < 0.0)
            throw table_error(where + ": prices must be >= 0");
        if (p.saw_per_m3 < p.pulp_per_m3)
            throw table_error(where + ": sawlog price must be >= pulpwood price");
        prices[sp] = p;
        seen[species_index(sp)] = true;
    }
    for (Species sp : all_species)
        if (!seen[species_index(sp)])
            throw table_error(path + ": missing price row for species " +
                              std::string(species_name(sp)));
    return prices;
}

// ---------------------------------------------------------------------------
// harvesting cost table
//
//   # entry_cost_per_operation: 180
//   class_lower_mm,per_stem,per_m3
// ---------------------------------------------------------------------------
inline HarvestCostModel load_costs(const std::string& path, const DiameterGrid& grid,
                                   std::string* provenance = nullptr) {
    const auto t = detail::read_table(path);
    detail::expect_header(t, {"class_lower_mm", "per_stem", "per_m3"});
    if (provenance) {
        if (auto p = t.directives.find("provenance"); p != t.directives.end())
            *provenance = p->second;
    }

    HarvestCostModel costs;
    if (auto e = t.directives.find("entry_cost_per_operation"); e != t.directives.end())
        costs.entry_per_operation =
            detail::parse_double(e->second, path + " entry_cost_per_operation");
    if (costs.entry_per_operation < 0.0)
        throw table_error(path + ": entry cost must be >= 0");

    std::map<long, std::pair<double, double>> by_lower;
    for (const auto& [lineno, row] : t.rows) {
        const std::string where = detail::row_context(t, lineno);
        if (row.size() != 3) throw table_error(where + ": expected 3 fields");
        const long lower = std::lround(detail::parse_double(row[0], where));
        const double per_stem = detail::parse_double(row[1], where);
        const double per_m3 = detail::parse_double(row[2], where);
        if (per_stem < 0.0 || per_m3 < 0.0)
            throw table_error(where + ": costs must be >= 0");
        by_lower[lower] = {per_stem, per_m3};
    }

    costs.per_stem.resize(grid.n_classes());
    costs.per_m3.resize(grid.n_classes());
    double prev_per_m3 = std::numeric_limits<double>::infinity();
    for (int c = 0; c < grid.n_classes(); ++c) {
        const long lower = std::lround(grid.lower(c));
        auto it = by_lower.find(lower);
        if (it == by_lower.end())
            throw table_error(path + ": missing row for class_lower_mm=" +
                              std::to_string(lower));
        costs.per_stem[c] = it->second.first;
        costs.per_m3[c] = it->second.second;
        if (costs.per_m3[c] > prev_per_m3)
            throw table_error(path + ": per-volume cost must be non-increasing in diameter "
                              "(violated at class_lower_mm=" + std::to_string(lower) + ")");
        prev_per_m3 = costs.per_m3[c];
    }
    return costs;
}

// Soft consistency checks; returns human-readable warnings.
inline std::vector<std::string> validate_tables(const EconTables& econ, double quality_b) {
    std::vector<std::string> warnings;
    for (Species sp : all_species) {
        const auto& p = econ.prices[sp];
        if (p.saw_per_m3 <= 0.0) continue;
        const double worst_saw = (1.0 - quality_b) * p.saw_per_m3;
        if (std::abs(p.pulp_per_m3 - worst_saw) > 0.1 * p.saw_per_m3) {
            std::ostringstream os;
            os << "prices: with quality half-width " << quality_b << " the worst sawlog of "
               << species_name(sp) << " is worth " << worst_saw
               << "/m3, but pulpwood is " << p.pulp_per_m3
               << "/m3; the quality distribution is meant to span roughly the "
                  "pulpwood-sawlog price gap";
            warnings.push_back(os.str());
        }
    }
    return warnings;
}

} // namespace standopt
