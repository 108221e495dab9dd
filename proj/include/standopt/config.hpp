#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "standopt/early_stand.hpp"
#include "standopt/policy.hpp"
#include "standopt/scenario.hpp"
#include "standopt/tables_io.hpp"

namespace standopt {

// One stand of the species x planting-density matrix.
struct StandSetup {
    std::string label;
    BootstrapSpec bootstrap;
};

struct TableRef {
    std::string path;
    std::string provenance;
};

// Fully resolved run configuration: scenario, stands, search space, loaded
// tables. Every key has a default, so an empty config file reproduces the
// standard setup (alpha 0.5, b 0.5, 30-month steps, 90-month vigor offset,
// densities 1200 and 2400 per ha of all three species).
struct RunConfig {
    ScenarioConfig scenario;
    ModelInputs inputs;
    std::vector<StandSetup> stands;
    SearchSpace search;
    std::vector<double> sweep_alphas;
    std::string output_dir = "out";
    std::string config_path;
    TableRef growth_table, yields_table, prices_table, costs_table;
};

namespace detail {

struct KeyValueFile {
    std::map<std::string, std::string> values;
    std::set<std::string> consumed;

    bool has(const std::string& k) const { return values.count(k) > 0; }

    std::string get(const std::string& k, const std::string& fallback) {
        consumed.insert(k);
        auto it = values.find(k);
        return it == values.end() ? fallback : it->second;
    }

    double get_num(const std::string& k, double fallback) {
        const std::string s = get(k, "");
        if (s.empty()) return fallback;
        try {
            size_t pos = 0;
            const double v = std::stod(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw config_error("config key '" + k + "': cannot parse number '" + s + "'");
        }
    }

    std::vector<std::string> get_words(const std::string& k, const std::string& fallback) {
        std::istringstream ss(get(k, fallback));
        std::vector<std::string> out;
        std::string w;
        while (ss >> w) out.push_back(w);
        return out;
    }

    void check_all_consumed() const {
        for (const auto& [k, v] : values)
            if (!consumed.count(k) && k.rfind("site.", 0) != 0)
                throw config_error("unknown config key '" + k + "'");
    }
};

inline KeyValueFile read_key_value_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    KeyValueFile kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string s = trim(line);
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw config_error(path + ":" + std::to_string(lineno) +
                               ": expected 'key = value'");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty())
            throw config_error(path + ":" + std::to_string(lineno) + ": empty key");
        if (kv.values.count(key))
            throw config_error(path + ":" + std::to_string(lineno) + ": duplicate key '" +
                               key + "'");
        kv.values[key] = value;
    }
    return kv;
}

inline std::string resolve_path(const std::string& config_path, const std::string& p) {
    namespace fs = std::filesystem;
    fs::path candidate(p);
    if (candidate.is_absolute()) return candidate.string();
    return (fs::path(config_path).parent_path() / candidate).lexically_normal().string();
}

inline double require_step_multiple(double value, double step, const std::string& key) {
    const double k = value / step;
    if (std::abs(k - std::round(k)) > 1e-9)
        throw config_error("config key '" + key + "' (" + std::to_string(value) +
                           ") must be a multiple of the step length");
    return value;
}

inline double parse_list_num(const std::string& word, const std::string& key) {
    try {
        size_t pos = 0;
        const double v = std::stod(word, &pos);
        if (pos != word.size()) throw std::invalid_argument(word);
        return v;
    } catch (const std::exception&) {
        throw config_error("config key '" + key + "': cannot parse number '" + word + "'");
    }
}

} // namespace detail

inline RunConfig load_run_config(const std::string& path) {
    auto kv = detail::read_key_value_file(path);
    RunConfig cfg;
    cfg.config_path = path;

    // scenario
    const std::string mode = kv.get("scenario.mode", "vigor_quality");
    if (mode == "reference") cfg.scenario.mode = ScenarioMode::reference;
    else if (mode == "vigor_quality") cfg.scenario.mode = ScenarioMode::vigor_quality;
    else if (mode == "coupled") cfg.scenario.mode = ScenarioMode::coupled;
    else throw config_error("scenario.mode must be reference, vigor_quality or coupled");

    cfg.scenario.alpha = kv.get_num("scenario.alpha", 0.5);
    cfg.scenario.quality_half_width = kv.get_num("scenario.quality_half_width", 0.5);
    const std::string growth = kv.get("scenario.growth", "markov");
    if (growth == "markov") cfg.scenario.growth = GrowthMode::markov;
    else if (growth == "non_markov") cfg.scenario.growth = GrowthMode::non_markov;
    else throw config_error("scenario.growth must be markov or non_markov");
    cfg.scenario.step_months = kv.get_num("scenario.step_months", 30.0);
    cfg.scenario.vigor_age_offset_months =
        kv.get_num("scenario.vigor_age_offset_months", 90.0);
    cfg.scenario.validate();
    detail::require_step_multiple(cfg.scenario.vigor_age_offset_months,
                                  cfg.scenario.step_months, "scenario.vigor_age_offset_months");

    // grid
    cfg.inputs.grid = DiameterGrid(kv.get_num("grid.class_width_mm", 50.0),
                                   static_cast<int>(kv.get_num("grid.n_classes", 12)));

    // site covariates: any site.* key
    cfg.inputs.site = {{"site_index", 17.0}, {"latitude", 62.0}};
    for (const auto& [k, v] : kv.values)
        if (k.rfind("site.", 0) == 0)
            cfg.inputs.site[k.substr(5)] = kv.get_num(k, 0.0);

    // economics
    cfg.inputs.finance.annual_expense = kv.get_num("economics.annual_expense", 0.0);
    cfg.inputs.finance.amortization_rate = kv.get_num("economics.amortization_rate", 0.0);
    const std::string basis = kv.get("economics.capitalization", "net_roadside");
    if (basis == "net_roadside") cfg.inputs.econ.basis = CapitalizationBasis::net_roadside;
    else if (basis == "gross_roadside") cfg.inputs.econ.basis = CapitalizationBasis::gross_roadside;
    else throw config_error("economics.capitalization must be net_roadside or gross_roadside");
    cfg.inputs.econ.land_value = kv.get_num("economics.land_value", 0.0);

    // tables
    cfg.growth_table.path = detail::resolve_path(path, kv.get("tables.growth",
                                                              "data/growth_coefficients.csv"));
    cfg.yields_table.path = detail::resolve_path(path, kv.get("tables.yields",
                                                              "data/assortment_yields.csv"));
    cfg.prices_table.path = detail::resolve_path(path, kv.get("tables.prices",
                                                              "data/prices.csv"));
    cfg.costs_table.path = detail::resolve_path(path, kv.get("tables.costs",
                                                             "data/harvest_costs.csv"));
    cfg.inputs.growth = load_growth_coefficients(cfg.growth_table.path);
    cfg.growth_table.provenance = cfg.inputs.growth.provenance;
    cfg.inputs.econ.yields =
        load_yields(cfg.yields_table.path, cfg.inputs.grid, &cfg.yields_table.provenance);
    cfg.inputs.econ.prices = load_prices(cfg.prices_table.path, &cfg.prices_table.provenance);
    cfg.inputs.econ.costs =
        load_costs(cfg.costs_table.path, cfg.inputs.grid, &cfg.costs_table.provenance);

    // stands
    const auto species_words = kv.get_words("stands.species", "spruce pine birch");
    const auto density_words = kv.get_words("stands.densities", "1200 2400");
    std::map<std::string, double> default_handoff{
        {"spruce", 240.0}, {"pine", 210.0}, {"birch", 180.0}};
    const double split_low = kv.get_num("stands.handoff_split_low", 0.5);
    const int first_class = static_cast<int>(kv.get_num("stands.handoff_first_class", 1));
    const double regen_base = kv.get_num("stands.regeneration_cost_base", 100.0);
    const double regen_per_stem = kv.get_num("stands.regeneration_cost_per_stem", 0.30);

    for (const auto& sp_name : species_words) {
        const Species sp = species_from_name(sp_name);
        const double handoff = detail::require_step_multiple(
            kv.get_num("stands.handoff_age_months." + sp_name, default_handoff[sp_name]),
            cfg.scenario.step_months, "stands.handoff_age_months." + sp_name);
        for (const auto& dens_word : density_words) {
            StandSetup stand;
            stand.bootstrap.species = sp;
            stand.bootstrap.planting_density =
                detail::parse_list_num(dens_word, "stands.densities");
            stand.bootstrap.handoff_age_months = handoff;
            stand.bootstrap.handoff_split_low = split_low;
            stand.bootstrap.handoff_first_class = first_class;
            stand.bootstrap.regeneration_cost =
                regen_base + regen_per_stem * stand.bootstrap.planting_density;
            stand.label = sp_name + "_" + dens_word;
            cfg.stands.push_back(stand);
        }
    }

    // policy search space
    cfg.search.ba_triggers.clear();
    for (const auto& w : kv.get_words("search.ba_triggers_m2ha", "none 22 26 30 34")) {
        if (w == "none") cfg.search.ba_triggers.push_back(std::nullopt);
        else cfg.search.ba_triggers.push_back(
            detail::parse_list_num(w, "search.ba_triggers_m2ha"));
    }
    cfg.search.pivots.clear();
    for (const auto& w : kv.get_words("search.pivots", "2 3 4 5 6"))
        cfg.search.pivots.push_back(
            static_cast<int>(detail::parse_list_num(w, "search.pivots")));
    cfg.search.slopes.clear();
    for (const auto& w : kv.get_words("search.slopes", "0.35 0.7 1.0"))
        cfg.search.slopes.push_back(detail::parse_list_num(w, "search.slopes"));
    cfg.search.depths.clear();
    for (const auto& w : kv.get_words("search.depths", "1.0 0.85 0.7 0.55"))
        cfg.search.depths.push_back(detail::parse_list_num(w, "search.depths"));
    cfg.search.striproad_survival = kv.get_num("search.striproad_survival", 0.85);
    cfg.search.max_thinnings = static_cast<int>(kv.get_num("search.max_thinnings", 2));

    const double rot_min = kv.get_num("search.rotation_min_months", 360.0);
    const double rot_max = kv.get_num("search.rotation_max_months", 1200.0);
    if (rot_max < rot_min)
        throw config_error("search.rotation_max_months must be >= rotation_min_months");
    cfg.search.rotations_months.clear();
    const double step = cfg.scenario.step_months;
    for (double tau = std::ceil(rot_min / step - 1e-9) * step; tau <= rot_max + 1e-6;
         tau += step)
        cfg.search.rotations_months.push_back(tau);
    cfg.search.validate();

    for (const auto& w : kv.get_words("sweep.alphas", ""))
        cfg.sweep_alphas.push_back(detail::parse_list_num(w, "sweep.alphas"));

    cfg.output_dir = detail::resolve_path(path, kv.get("output.dir", "out"));

    kv.check_all_consumed();
    return cfg;
}

} // namespace standopt
