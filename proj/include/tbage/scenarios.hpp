#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tbage/simulate.hpp"

namespace tbage {

constexpr double kWhoThreshold = 86402.0;

struct Override {
    std::string key;
    double value;
    bool multiply = false;  // value replaces the entry unless set
};

struct ScenarioSpec {
    std::string name = "scenario";
    std::vector<Override> overrides;
    int start_year = 2022;  // overrides take effect on Jan 1 of this year
    int horizon = 2035;     // last projected year, at most 2100
    double dt = kDefaultStep;
};

Params apply_scenario_overrides(const Params& base, const std::vector<Override>& overrides);

struct Projection {
    std::string name;
    std::vector<AnnualIncidence> series;  // 2005 through the horizon
    double threshold = kWhoThreshold;
    std::optional<int> target_year;  // first year at or below threshold
};

// History on the base parameters up to the start year, then the modified
// parameters through the horizon.
Projection run_scenario(const Params& base, const ScenarioSpec& spec);

// One scenario per value applied to a single key, sharing the history run.
std::vector<Projection> scenario_sweep(const Params& base, const std::string& key,
                                       const std::vector<double>& values, bool multiply,
                                       int start_year = 2022, int horizon = 2035,
                                       double dt = kDefaultStep);

struct WhoAssessment {
    double threshold;
    std::optional<int> year;
    bool met_by_2035;
};

// Requires the projection to reach at least 2060 so a miss is meaningful.
WhoAssessment who_target_assessment(const Projection& proj, double threshold = kWhoThreshold);

}  // namespace tbage
