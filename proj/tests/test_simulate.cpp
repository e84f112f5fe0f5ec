#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "tbage/errors.hpp"
#include "tbage/simulate.hpp"

using namespace tbage;

namespace {

State susceptible_only() {
    State y = State::Zero();
    y[iS(0)] = 1e6;
    y[iS(1)] = 2e6;
    y[iS(2)] = 3e6;
    return y;
}

}  // namespace

TEST_CASE("pure demographic decay matches the closed form") {
    Params p = preset("varying_n");
    p.A = 0.0;
    p.mixing.beta = Vec3::Zero();
    const State y0 = susceptible_only();
    const Trajectory tr = integrate(p, y0, 0.0, 1.0, 1e-3);
    const double expect = y0[iS(0)] * std::exp(-(p.mu[0] + p.theta[0]) * 1.0);
    const double got = tr.states.back()[iS(0)];
    CHECK(std::abs(got - expect) <= 1e-8 * expect);
    CHECK(tr.times.size() == 1001);
    CHECK(tr.times.front() == 0.0);
    CHECK(tr.times.back() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("halving the step cuts the error by about sixteen") {
    const Params p = preset("varying_n");
    const State y0 = initial_state();
    const State ref = integrate(p, y0, 0.0, 1.0, 5e-4).states.back();
    const State coarse = integrate(p, y0, 0.0, 1.0, 2e-2).states.back();
    const State fine = integrate(p, y0, 0.0, 1.0, 1e-2).states.back();
    double ec = 0.0, ef = 0.0;
    for (int i = 0; i < 12; ++i) {
        const double s = std::max(1.0, std::abs(ref[i]));
        ec = std::max(ec, std::abs(coarse[i] - ref[i]) / s);
        ef = std::max(ef, std::abs(fine[i] - ref[i]) / s);
    }
    REQUIRE(ef > 0.0);
    const double ratio = ec / ef;
    CHECK(ratio >= 12.0);
    CHECK(ratio <= 20.0);
}

TEST_CASE("step size limits are enforced") {
    const Params p = preset("varying_n");
    const State y0 = initial_state();
    CHECK_THROWS_AS(integrate(p, y0, 0.0, 1.0, 0.06), StepTooLarge);
    CHECK_THROWS_AS(integrate(p, y0, 0.0, 1.0, 0.0), StepTooLarge);
    CHECK_THROWS_AS(integrate(p, y0, 0.0, 1.0, -1e-3), StepTooLarge);
    CHECK_NOTHROW(integrate(p, y0, 0.0, 1.0, 0.05));
    CHECK_THROWS_AS(integrate(p, y0, 1.0, 1.0, 1e-3), DomainError);
    CHECK_THROWS_AS(integrate(p, y0, 2.0, 1.0, 1e-3), DomainError);
}

TEST_CASE("bad initial states are rejected") {
    const Params p = preset("varying_n");
    State y0 = initial_state();
    y0[iE(1)] = -1.0;
    CHECK_THROWS_AS(integrate(p, y0, 0.0, 1.0, 1e-3), InvalidState);
    y0 = initial_state();
    y0[iR(2)] = std::nan("");
    CHECK_THROWS_AS(integrate(p, y0, 0.0, 1.0, 1e-3), InvalidState);
}

TEST_CASE("overflowing dynamics stop with a diagnostic") {
    Params p = preset("varying_n");
    p.A = 1.7e308;
    CHECK_THROWS_AS(integrate(p, initial_state(), 0.0, 3.0, 1e-3), NonFiniteState);
}

TEST_CASE("no progression means no new cases") {
    Params p = preset("varying_n");
    p.sigma = Vec3::Zero();
    const Trajectory tr = integrate(p, initial_state(), 0.0, 2.0, 1e-2);
    const auto annual = annual_new_cases(tr);
    REQUIRE(annual.size() == 2);
    for (const auto& row : annual) {
        CHECK(row.total == 0.0);
        CHECK(row.by_group.norm() == 0.0);
    }
}

TEST_CASE("constant flux integrates to itself over a year") {
    Trajectory tr;
    const double dt = 0.05;
    for (int i = 0; i < 44; ++i) {
        tr.times.push_back(16.9 + dt * i);
        tr.states.push_back(State::Zero());
        tr.case_flux.push_back(Vec3(10.0, 20.0, 30.0));
    }
    const auto annual = annual_new_cases(tr);
    REQUIRE(annual.size() == 2);
    CHECK(annual[0].year == 2022);
    CHECK(annual[1].year == 2023);
    for (const auto& row : annual) {
        CHECK(row.by_group[0] == doctest::Approx(10.0).epsilon(1e-12));
        CHECK(row.by_group[1] == doctest::Approx(20.0).epsilon(1e-12));
        CHECK(row.by_group[2] == doctest::Approx(30.0).epsilon(1e-12));
        CHECK(row.total == doctest::Approx(60.0).epsilon(1e-12));
    }
}

TEST_CASE("annual totals are the sum of the group columns") {
    const Params p = preset("varying_n");
    const Trajectory tr = integrate(p, initial_state(), 0.0, 3.0, 1e-2);
    const auto annual = annual_new_cases(tr);
    REQUIRE(annual.size() == 3);
    CHECK(annual.front().year == 2005);
    CHECK(annual.back().year == 2007);
    for (const auto& row : annual) {
        CHECK(row.total == row.by_group.sum());
        CHECK(row.total > 0.0);
    }
}

TEST_CASE("annual case counts are nearly step-size independent") {
    const Params p = preset("varying_n");
    const auto coarse = annual_new_cases(integrate(p, initial_state(), 0.0, 5.0, 1e-2));
    const auto fine = annual_new_cases(integrate(p, initial_state(), 0.0, 5.0, 1e-3));
    REQUIRE(coarse.size() == fine.size());
    for (size_t i = 0; i < coarse.size(); ++i) {
        CHECK(coarse[i].year == fine[i].year);
        CHECK(std::abs(coarse[i].total - fine[i].total) <= 1e-3 * fine[i].total);
    }
}

TEST_CASE("short spans cannot be summarized by year") {
    const Params p = preset("varying_n");
    const Trajectory tr = integrate(p, initial_state(), 0.0, 0.5, 1e-3);
    CHECK_THROWS_AS(annual_new_cases(tr), SpanTooShort);

    Trajectory tiny;
    tiny.times = {0.0};
    tiny.states = {State::Zero()};
    tiny.case_flux = {Vec3::Zero()};
    CHECK_THROWS_AS(annual_new_cases(tiny), SpanTooShort);

    Trajectory offset;
    for (int i = 0; i <= 20; ++i) {
        offset.times.push_back(0.5 + 0.05 * i);
        offset.states.push_back(State::Zero());
        offset.case_flux.push_back(Vec3::Ones());
    }
    CHECK_THROWS_AS(annual_new_cases(offset), SpanTooShort);
}

TEST_CASE("stiff progression at the largest step trips the clamp counter") {
    Params p = preset("varying_n");
    p.sigma = Vec3::Constant(1000.0);
    const Trajectory tr = integrate(p, initial_state(), 0.0, 0.5, 0.05);
    CHECK(tr.clamp_count > 0);
    for (const auto& y : tr.states)
        for (int c = 0; c < 12; ++c) CHECK(y[c] >= 0.0);
}

TEST_CASE("baseline presets stay positive without clamping through 2100") {
    for (const char* name : {"varying_n", "constant_n"}) {
        const Params p = preset(name);
        const Trajectory tr = integrate(p, initial_state(), 0.0, 95.0, 1e-3);
        CHECK(tr.clamp_count == 0);
        const State& last = tr.states.back();
        for (int c = 0; c < 12; ++c) {
            CHECK(std::isfinite(last[c]));
            CHECK(last[c] >= 0.0);
        }
        CHECK(group_sizes(last).minCoeff() > 0.0);
    }
}

TEST_CASE("total population follows the demographic balance") {
    const Params p = preset("varying_n");
    const Trajectory tr = integrate(p, initial_state(), 0.0, 5.0, 1e-3);
    const double total0 = tr.states.front().sum();
    auto net = [&](const State& y) {
        const Vec3 n = group_sizes(y);
        double v = p.A;
        for (int g = 0; g < 3; ++g) v -= p.mu[g] * n[g] + p.d[g] * y[iI(g)];
        return v;
    };
    double acc = 0.0;
    for (size_t i = 0; i + 1 < tr.states.size(); ++i) {
        const double dt = tr.times[i + 1] - tr.times[i];
        acc += 0.5 * dt * (net(tr.states[i]) + net(tr.states[i + 1]));
    }
    const double expect = total0 + acc;
    const double got = tr.states.back().sum();
    CHECK(std::abs(got - expect) <= 1e-8 * total0);
}
