#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "tbage/errors.hpp"
#include "tbage/scenarios.hpp"

using namespace tbage;

namespace {

const double kTestStep = 1e-2;

ScenarioSpec spec_with(std::vector<Override> ovs, int horizon = 2035) {
    ScenarioSpec s;
    s.overrides = std::move(ovs);
    s.horizon = horizon;
    s.dt = kTestStep;
    return s;
}

double total_in(const Projection& proj, int year) {
    for (const auto& row : proj.series)
        if (row.year == year) return row.total;
    FAIL("projection has no year ", year);
    return 0.0;
}

}  // namespace

TEST_CASE("an empty override list reproduces the uninterrupted run") {
    const Params base = preset("varying_n");
    const Projection proj = run_scenario(base, spec_with({}));
    const auto direct =
        annual_new_cases(integrate(base, initial_state(), 0.0, 31.0, kTestStep));
    REQUIRE(proj.series.size() == direct.size());
    for (size_t i = 0; i < direct.size(); ++i) {
        CHECK(proj.series[i].year == direct[i].year);
        CHECK(proj.series[i].total == direct[i].total);
        CHECK(proj.series[i].by_group == direct[i].by_group);
    }
    CHECK(proj.series.front().year == 2005);
    CHECK(proj.series.back().year == 2035);
    CHECK_FALSE(proj.target_year.has_value());
}

TEST_CASE("halving elderly assortativity lands in the expected 2035 band") {
    const Params base = preset("varying_n");
    const Projection proj = run_scenario(base, spec_with({{"eps3", 0.5, true}}));
    const double t2035 = total_in(proj, 2035);
    CHECK(t2035 >= 52500.0);
    CHECK(t2035 <= 87500.0);
}

TEST_CASE("cutting young and adult contact rates backfires by 2035") {
    const Params base = preset("varying_n");
    const Projection proj =
        run_scenario(base, spec_with({{"a1", 0.8, true}, {"a2", 0.8, true}}));
    CHECK(total_in(proj, 2035) > 200000.0);
}

TEST_CASE("raising vaccine effectiveness lowers every projected year") {
    const Params base = preset("varying_n");
    const Projection baseline = run_scenario(base, spec_with({}));
    const auto sweep = scenario_sweep(base, "omega", {0.8, 0.9, 0.95}, false, 2022, 2035, kTestStep);
    REQUIRE(sweep.size() == 3);
    CHECK(sweep[0].name == "omega=0.8");
    CHECK(sweep[1].name == "omega=0.9");
    CHECK(sweep[2].name == "omega=0.95");

    for (const auto& proj : sweep) {
        for (const auto& row : proj.series) {
            const double ref = total_in(baseline, row.year);
            if (row.year < 2022)
                CHECK(row.total == ref);
            else
                CHECK(row.total <= ref);
        }
    }
    const double t08 = total_in(sweep[0], 2035);
    const double t09 = total_in(sweep[1], 2035);
    const double t95 = total_in(sweep[2], 2035);
    CHECK(t08 > t09);
    CHECK(t09 > t95);
    CHECK(t95 > 0.0);
}

TEST_CASE("elderly contact volume scales the projection monotonically") {
    const Params base = preset("varying_n");
    const auto sweep = scenario_sweep(base, "a3", {0.7, 0.85, 1.0}, true, 2022, 2035, kTestStep);
    REQUIRE(sweep.size() == 3);
    const double lo = total_in(sweep[0], 2035);
    const double mid = total_in(sweep[1], 2035);
    const double hi = total_in(sweep[2], 2035);
    CHECK(lo < mid);
    CHECK(mid < hi);
}

TEST_CASE("multiplicative and absolute overrides describe the same change") {
    const Params base = preset("varying_n");
    const Projection rel = run_scenario(base, spec_with({{"a3", 0.75, true}}));
    const Projection abs =
        run_scenario(base, spec_with({{"a3", base.mixing.a[2] * 0.75, false}}));
    REQUIRE(rel.series.size() == abs.series.size());
    for (size_t i = 0; i < rel.series.size(); ++i)
        CHECK(rel.series[i].total == abs.series[i].total);
    REQUIRE(rel.target_year.has_value());
    CHECK(*rel.target_year >= 2030);
    CHECK(*rel.target_year <= 2032);
}

TEST_CASE("threshold crossing is assessed against the long horizon") {
    const Params base = preset("varying_n");
    const Projection proj = run_scenario(base, spec_with({}, 2100));
    const WhoAssessment med = who_target_assessment(proj);
    REQUIRE(med.year.has_value());
    CHECK(*med.year >= 2047);
    CHECK(*med.year <= 2051);
    CHECK_FALSE(med.met_by_2035);
    CHECK(med.threshold == kWhoThreshold);

    const WhoAssessment low = who_target_assessment(proj, 10000.0);
    REQUIRE(low.year.has_value());
    CHECK(*low.year >= 2061);
    CHECK(*low.year <= 2071);
    CHECK_FALSE(low.met_by_2035);

    const Projection boosted = run_scenario(base, spec_with({{"a3", 0.75, true}}, 2060));
    const WhoAssessment early = who_target_assessment(boosted);
    CHECK(early.met_by_2035);

    const Projection short_run = run_scenario(base, spec_with({}, 2050));
    CHECK_THROWS_AS(who_target_assessment(short_run), HorizonTooShort);
}

TEST_CASE("overrides must name real parameters and keep them valid") {
    const Params base = preset("varying_n");
    CHECK_THROWS_AS(run_scenario(base, spec_with({{"beta4", 0.5, true}})), InvalidOverride);
    CHECK_THROWS_AS(run_scenario(base, spec_with({{"eps3", 1.3, false}})), InvalidOverride);
    CHECK_THROWS_AS(run_scenario(base, spec_with({{"beta3", 1e5, true}})), InvalidOverride);
    CHECK_THROWS_AS(apply_scenario_overrides(base, {{"omega", -0.2, false}}), InvalidOverride);
    CHECK_NOTHROW(apply_scenario_overrides(base, {{"omega", 0.9, false}}));
}

TEST_CASE("projection spans are bounded") {
    const Params base = preset("varying_n");
    ScenarioSpec s = spec_with({});
    s.horizon = 2101;
    CHECK_THROWS_AS(run_scenario(base, s), DomainError);
    s.horizon = 2020;
    CHECK_THROWS_AS(run_scenario(base, s), DomainError);
    s.horizon = 2035;
    s.start_year = 2005;
    CHECK_THROWS_AS(run_scenario(base, s), DomainError);
}

TEST_CASE("scenario machinery leaves the base parameters alone") {
    const Params base = preset("varying_n");
    const double a3 = base.mixing.a[2];
    const double om = base.omega;
    (void)run_scenario(base, spec_with({{"a3", 0.75, true}, {"omega", 0.9, false}}));
    CHECK(base.mixing.a[2] == a3);
    CHECK(base.omega == om);
}
