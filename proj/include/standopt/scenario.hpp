#pragma once

#include "standopt/errors.hpp"

namespace standopt {

// Which couplings between size, vigor, quality and growth are active.
//   reference    — no vigor spreading, no quality variation
//   vigor_quality— vigor scales growth; thinning updates the quality coefficient
//   coupled      — additionally, vigor scales quality and quality scales growth
enum class ScenarioMode { reference, vigor_quality, coupled };

enum class GrowthMode { markov, non_markov };

struct ScenarioConfig {
    ScenarioMode mode = ScenarioMode::vigor_quality;
    double alpha = 0.5;             // inheritance contribution coefficient
    double quality_half_width = 0.5; // b, relative half-width of the quality distribution
    GrowthMode growth = GrowthMode::markov;
    double step_months = 30.0;
    double vigor_age_offset_months = 90.0; // after handoff, when vigor is assigned

    bool vigor_active() const { return mode != ScenarioMode::reference; }
    bool quality_active() const { return mode != ScenarioMode::reference; }
    // quality coefficient multiplies the diameter increment as well
    bool quality_scales_growth() const { return mode == ScenarioMode::coupled; }
    // vigor coefficient (raw m) multiplies the quality coefficient when assigned
    bool vigor_scales_quality() const { return mode == ScenarioMode::coupled; }

    void validate() const {
        if (alpha < 0.0 || alpha > 1.0)
            throw config_error("scenario.alpha must be in [0,1]");
        if (quality_half_width < 0.0 || quality_half_width > 1.0)
            throw config_error("scenario.quality_half_width must be in [0,1]");
        if (step_months <= 0.0)
            throw config_error("scenario.step_months must be positive");
        if (vigor_age_offset_months < 0.0)
            throw config_error("scenario.vigor_age_offset_months must be >= 0");
    }
};

} // namespace standopt
