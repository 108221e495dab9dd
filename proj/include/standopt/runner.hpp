#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "standopt/config.hpp"
#include "standopt/policy.hpp"

namespace standopt {
namespace detail {

inline std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

inline uint64_t fnv1a64(const std::string& bytes) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string file_hash_hex(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "missing";
    std::ostringstream os;
    os << in.rdbuf();
    std::ostringstream hex;
    hex << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(os.str());
    return hex.str();
}

inline std::ofstream open_output(const std::string& dir, const std::string& name) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::ofstream out(fs::path(dir) / name);
    if (!out) throw config_error("cannot write output file '" + name + "' in '" + dir + "'");
    return out;
}

inline const char* scenario_mode_name(ScenarioMode m) {
    switch (m) {
        case ScenarioMode::reference: return "reference";
        case ScenarioMode::vigor_quality: return "vigor_quality";
        case ScenarioMode::coupled: return "coupled";
    }
    return "?";
}

} // namespace detail

struct StandOutcome {
    StandSetup stand;
    OptimizeResult opt;
    FigureData figures;
};

inline StandOutcome evaluate_stand(const StandSetup& stand, const RunConfig& cfg) {
    StandOutcome out;
    out.stand = stand;
    out.opt = optimize(stand.bootstrap, cfg.scenario, cfg.inputs, cfg.search);
    const auto sim =
        simulate_rotation(stand.bootstrap, out.opt.best_policy, cfg.scenario, cfg.inputs);
    out.figures = sim.figures;
    return out;
}

// --- CSV emitters -----------------------------------------------------------

inline void write_fig1(const std::string& dir, const std::vector<StandOutcome>& outcomes) {
    auto out = detail::open_output(dir, "fig1_expected_rate_vs_rotation.csv");
    out << "stand,species,planting_density_per_ha,rotation_months,expected_rate_per_year\n";
    for (const auto& o : outcomes)
        for (const auto& pt : o.opt.curve) {
            if (!std::isfinite(pt.expected_rate)) continue; // rotation below handoff age
            out << o.stand.label << ',' << species_name(o.stand.bootstrap.species) << ','
                << detail::fmt(o.stand.bootstrap.planting_density) << ','
                << detail::fmt(pt.rotation_months) << ',' << detail::fmt(pt.expected_rate)
                << '\n';
        }
}

inline void write_fig2(const std::string& dir, const std::vector<StandOutcome>& outcomes) {
    auto out = detail::open_output(dir, "fig2_mean_diameter_vs_age.csv");
    out << "stand,species,planting_density_per_ha,age_months,ba_weighted_mean_diameter_cm\n";
    for (const auto& o : outcomes)
        for (const auto& [age, diam] : o.figures.diameter_series)
            out << o.stand.label << ',' << species_name(o.stand.bootstrap.species) << ','
                << detail::fmt(o.stand.bootstrap.planting_density) << ',' << detail::fmt(age)
                << ',' << detail::fmt(diam) << '\n';
}

inline void write_fig3(const std::string& dir, const std::vector<StandOutcome>& outcomes,
                       const DiameterGrid& grid) {
    auto out = detail::open_output(dir, "fig3_removal_by_class.csv");
    out << "stand,species,planting_density_per_ha,thinning_index,age_months,"
           "class_lower_mm,class_upper_mm,ba_removed_fraction\n";
    for (const auto& o : outcomes)
        for (const auto& ev : o.figures.thinnings)
            for (int c = 0; c < grid.n_classes(); ++c)
                out << o.stand.label << ',' << species_name(o.stand.bootstrap.species) << ','
                    << detail::fmt(o.stand.bootstrap.planting_density) << ',' << ev.index
                    << ',' << detail::fmt(ev.age_months) << ',' << detail::fmt(grid.lower(c))
                    << ',' << detail::fmt(grid.upper(c)) << ','
                    << detail::fmt(ev.ba_removed_fraction[c]) << '\n';
}

inline void write_fig4(const std::string& dir, const std::vector<StandOutcome>& outcomes) {
    auto out = detail::open_output(dir, "fig4_thinning_triggers.csv");
    out << "stand,species,planting_density_per_ha,thinning_index,age_months,"
           "ba_before_m2ha,ba_after_m2ha,stems_before_per_ha,stems_after_per_ha\n";
    for (const auto& o : outcomes)
        for (const auto& ev : o.figures.thinnings)
            out << o.stand.label << ',' << species_name(o.stand.bootstrap.species) << ','
                << detail::fmt(o.stand.bootstrap.planting_density) << ',' << ev.index << ','
                << detail::fmt(ev.age_months) << ',' << detail::fmt(ev.ba_before) << ','
                << detail::fmt(ev.ba_after) << ',' << detail::fmt(ev.stems_before) << ','
                << detail::fmt(ev.stems_after) << '\n';
}

inline void write_policies(const std::string& dir,
                           const std::vector<StandOutcome>& outcomes) {
    auto out = detail::open_output(dir, "optimal_policies.csv");
    out << "stand,species,planting_density_per_ha,ba_trigger_m2ha,pivot_class,taper_slope,"
           "quality_depth,striproad_survival,max_thinnings,rotation_months,"
           "expected_rate_per_year,maturity_diameter_cm,n_thinnings\n";
    for (const auto& o : outcomes) {
        const auto& p = o.opt.best_policy;
        out << o.stand.label << ',' << species_name(o.stand.bootstrap.species) << ','
            << detail::fmt(o.stand.bootstrap.planting_density) << ','
            << (p.ba_trigger_m2ha ? detail::fmt(*p.ba_trigger_m2ha) : std::string("none"))
            << ',' << p.pivot_class << ',' << detail::fmt(p.taper_slope) << ','
            << detail::fmt(p.depth) << ',' << detail::fmt(p.striproad_survival) << ','
            << p.max_thinnings << ',' << detail::fmt(p.rotation_months) << ','
            << detail::fmt(o.opt.best_rate) << ','
            << detail::fmt(o.figures.maturity_diameter_cm) << ','
            << o.figures.thinnings.size() << '\n';
    }
}

inline void write_manifest(const RunConfig& cfg, const std::string& verb,
                           const std::vector<StandOutcome>* outcomes) {
    nlohmann::json m;
    m["verb"] = verb;
    m["config"] = {{"path", cfg.config_path},
                   {"hash_fnv1a64", detail::file_hash_hex(cfg.config_path)}};
    auto table_entry = [](const TableRef& t) {
        return nlohmann::json{{"path", t.path},
                              {"hash_fnv1a64", detail::file_hash_hex(t.path)},
                              {"provenance", t.provenance}};
    };
    m["tables"] = {{"growth", table_entry(cfg.growth_table)},
                   {"yields", table_entry(cfg.yields_table)},
                   {"prices", table_entry(cfg.prices_table)},
                   {"costs", table_entry(cfg.costs_table)}};
    m["scenario"] = {{"mode", detail::scenario_mode_name(cfg.scenario.mode)},
                     {"alpha", cfg.scenario.alpha},
                     {"quality_half_width", cfg.scenario.quality_half_width},
                     {"growth", cfg.scenario.growth == GrowthMode::markov ? "markov"
                                                                          : "non_markov"},
                     {"step_months", cfg.scenario.step_months},
                     {"vigor_age_offset_months", cfg.scenario.vigor_age_offset_months}};
    if (outcomes) {
        auto& arr = m["stands"] = nlohmann::json::array();
        for (const auto& o : *outcomes) {
            const auto& p = o.opt.best_policy;
            arr.push_back({{"stand", o.stand.label},
                           {"expected_rate_per_year", o.opt.best_rate},
                           {"rotation_months", p.rotation_months},
                           {"ba_trigger_m2ha",
                            p.ba_trigger_m2ha ? nlohmann::json(*p.ba_trigger_m2ha)
                                              : nlohmann::json(nullptr)},
                           {"pivot_class", p.pivot_class},
                           {"taper_slope", p.taper_slope},
                           {"quality_depth", p.depth},
                           {"n_thinnings", o.figures.thinnings.size()},
                           {"maturity_diameter_cm", o.figures.maturity_diameter_cm}});
        }
    }
    auto out = detail::open_output(cfg.output_dir, "manifest.json");
    out << m.dump(2) << '\n';

    // timestamp lives apart so result files are byte-stable across reruns
    auto stamp = detail::open_output(cfg.output_dir, "run_stamp.txt");
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    stamp << std::put_time(std::gmtime(&now), "%Y-%m-%dT%H:%M:%SZ") << '\n';
}

// --- command entry points ---------------------------------------------------

inline int command_run(const RunConfig& cfg) {
    std::vector<StandOutcome> outcomes;
    for (const auto& stand : cfg.stands) outcomes.push_back(evaluate_stand(stand, cfg));
    write_fig1(cfg.output_dir, outcomes);
    write_fig2(cfg.output_dir, outcomes);
    write_fig3(cfg.output_dir, outcomes, cfg.inputs.grid);
    write_fig4(cfg.output_dir, outcomes);
    write_policies(cfg.output_dir, outcomes);
    write_manifest(cfg, "run", &outcomes);
    for (const auto& o : outcomes)
        std::cout << o.stand.label << ": <r> = " << detail::fmt(o.opt.best_rate)
                  << " /yr at rotation " << detail::fmt(o.opt.best_policy.rotation_months)
                  << " months, " << o.figures.thinnings.size() << " thinning(s), maturity "
                  << detail::fmt(o.figures.maturity_diameter_cm) << " cm\n";
    return 0;
}

inline int command_sweep_rotation(const RunConfig& cfg) {
    std::vector<StandOutcome> outcomes;
    for (const auto& stand : cfg.stands) outcomes.push_back(evaluate_stand(stand, cfg));
    write_fig1(cfg.output_dir, outcomes);
    write_manifest(cfg, "sweep-rotation", &outcomes);
    std::cout << "wrote fig1_expected_rate_vs_rotation.csv for " << outcomes.size()
              << " stand(s)\n";
    return 0;
}

inline int command_optimize(const RunConfig& cfg) {
    std::vector<StandOutcome> outcomes;
    for (const auto& stand : cfg.stands) outcomes.push_back(evaluate_stand(stand, cfg));
    write_policies(cfg.output_dir, outcomes);
    write_manifest(cfg, "optimize", &outcomes);
    for (const auto& o : outcomes)
        std::cout << o.stand.label << ": <r> = " << detail::fmt(o.opt.best_rate)
                  << " /yr at rotation " << detail::fmt(o.opt.best_policy.rotation_months)
                  << " months\n";

    if (!cfg.sweep_alphas.empty()) {
        auto out = detail::open_output(cfg.output_dir, "alpha_sensitivity.csv");
        out << "alpha,stand,expected_rate_per_year,rotation_months,maturity_diameter_cm\n";
        for (double alpha : cfg.sweep_alphas) {
            RunConfig swept = cfg;
            swept.scenario.alpha = alpha;
            for (const auto& stand : swept.stands) {
                const auto o = evaluate_stand(stand, swept);
                out << detail::fmt(alpha) << ',' << o.stand.label << ','
                    << detail::fmt(o.opt.best_rate) << ','
                    << detail::fmt(o.opt.best_policy.rotation_months) << ','
                    << detail::fmt(o.figures.maturity_diameter_cm) << '\n';
                std::cout << "alpha=" << detail::fmt(alpha) << ' ' << o.stand.label
                          << ": <r> = " << detail::fmt(o.opt.best_rate) << " /yr\n";
            }
        }
    }
    return 0;
}

inline int command_validate_tables(const RunConfig& cfg) {
    const auto warnings = validate_tables(cfg.inputs.econ, cfg.scenario.quality_half_width);
    std::cout << "tables parsed: growth=" << cfg.growth_table.path
              << " yields=" << cfg.yields_table.path << " prices=" << cfg.prices_table.path
              << " costs=" << cfg.costs_table.path << '\n';
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
    std::cout << (warnings.empty() ? "no warnings\n"
                                   : std::to_string(warnings.size()) + " warning(s)\n");
    return 0;
}

} // namespace standopt
