#include "tbage/scenarios.hpp"

#include <algorithm>

#include "tbage/errors.hpp"
#include "tbage/io.hpp"
#include "tbage/sensitivity.hpp"

namespace tbage {

Params apply_scenario_overrides(const Params& base, const std::vector<Override>& overrides) {
    Params p = base;
    for (const auto& ov : overrides) {
        try {
            const double v = ov.multiply ? get_named(p, ov.key) * ov.value : ov.value;
            p = apply_named(p, {ov.key}, {v});
        } catch (const UnknownKey&) {
            throw InvalidOverride("unknown parameter '" + ov.key + "'");
        }
    }
    try {
        p.validate();
    } catch (const Error& e) {
        throw InvalidOverride(e.what());
    }
    return p;
}

namespace {

Projection project_from(const Params& base, const Trajectory& history, const Params& modified,
                        const std::string& name, int start_year, int horizon, double dt) {
    const double ts = start_year - 2005.0;
    const auto tail = integrate(modified, history.states.back(), ts, horizon + 1 - 2005.0, dt);

    Trajectory full;
    full.times = history.times;
    full.states = history.states;
    full.case_flux = history.case_flux;
    full.clamp_count = history.clamp_count + tail.clamp_count;
    for (size_t i = 1; i < tail.times.size(); ++i) {
        full.times.push_back(tail.times[i]);
        full.states.push_back(tail.states[i]);
        full.case_flux.push_back(tail.case_flux[i]);
    }
    (void)base;

    Projection out;
    out.name = name;
    out.series = annual_new_cases(full);
    while (!out.series.empty() && out.series.back().year > horizon) out.series.pop_back();
    for (const auto& row : out.series) {
        if (row.total <= out.threshold) {
            out.target_year = row.year;
            break;
        }
    }
    return out;
}

void check_span(int start_year, int horizon) {
    if (start_year < 2006) throw DomainError("start year must be 2006 or later");
    if (horizon > 2100) throw DomainError("horizon capped at 2100");
    if (horizon < start_year) throw DomainError("horizon precedes the start year");
}

}  // namespace

Projection run_scenario(const Params& base, const ScenarioSpec& spec) {
    base.validate();
    check_span(spec.start_year, spec.horizon);
    const Params modified = apply_scenario_overrides(base, spec.overrides);
    const auto history =
        integrate(base, initial_state(), 0.0, spec.start_year - 2005.0, spec.dt);
    return project_from(base, history, modified, spec.name, spec.start_year, spec.horizon,
                        spec.dt);
}

std::vector<Projection> scenario_sweep(const Params& base, const std::string& key,
                                       const std::vector<double>& values, bool multiply,
                                       int start_year, int horizon, double dt) {
    base.validate();
    check_span(start_year, horizon);
    if (values.empty()) throw DomainError("sweep needs at least one value");
    const auto history = integrate(base, initial_state(), 0.0, start_year - 2005.0, dt);

    std::vector<Projection> out;
    for (double v : values) {
        const Params modified = apply_scenario_overrides(base, {{key, v, multiply}});
        std::string name = key + "=" + fmt_full(v);
        out.push_back(project_from(base, history, modified, name, start_year, horizon, dt));
    }
    return out;
}

WhoAssessment who_target_assessment(const Projection& proj, double threshold) {
    if (!(threshold > 0.0)) throw DomainError("threshold must be positive");
    if (proj.series.empty() || proj.series.back().year < 2060)
        throw HorizonTooShort("projection must extend through 2060");
    WhoAssessment out{threshold, std::nullopt, false};
    for (const auto& row : proj.series) {
        if (row.total <= threshold) {
            out.year = row.year;
            break;
        }
    }
    out.met_by_2035 = out.year && *out.year <= 2035;
    return out;
}

}  // namespace tbage
