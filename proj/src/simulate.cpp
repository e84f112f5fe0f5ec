#include "tbage/simulate.hpp"

#include <cmath>

#include "tbage/errors.hpp"

namespace tbage {

namespace {

Vec3 flux_of(const Params& p, const State& y) {
    return Vec3(p.sigma[0] * y[iE(0)], p.sigma[1] * y[iE(1)], p.sigma[2] * y[iE(2)]);
}

}  // namespace

Trajectory integrate(const Params& p, const State& y0, double t0, double t1, double dt) {
    if (!(dt > 0.0)) throw StepTooLarge("dt must be positive");
    if (dt > kMaxStep) throw StepTooLarge("dt exceeds the stability limit of 0.05 years");
    if (!(t1 > t0)) throw DomainError("t1 must exceed t0");
    p.validate();
    for (int k = 0; k < 12; ++k)
        if (!(y0[k] >= 0.0) || !std::isfinite(y0[k]))
            throw InvalidState("initial compartments must be finite and nonnegative");

    const long nsteps = std::max<long>(1, std::lround((t1 - t0) / dt));
    Trajectory tr;
    tr.times.reserve(nsteps + 1);
    tr.states.reserve(nsteps + 1);
    tr.case_flux.reserve(nsteps + 1);

    State y = y0;
    tr.times.push_back(t0);
    tr.states.push_back(y);
    tr.case_flux.push_back(flux_of(p, y));

    for (long k = 0; k < nsteps; ++k) {
        auto stage = [&](const State& ys) {
            State kv = rhs(p, ys);
            if (!kv.allFinite())
                throw NonFiniteState("derivative overflow near t=" +
                                     std::to_string(t0 + k * dt));
            return kv;
        };
        const State k1 = stage(y);
        const State k2 = stage(y + (0.5 * dt) * k1);
        const State k3 = stage(y + (0.5 * dt) * k2);
        const State k4 = stage(y + dt * k3);
        y = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        for (int c = 0; c < 12; ++c) {
            if (!std::isfinite(y[c]))
                throw NonFiniteState("compartment " + std::to_string(c) + " at t=" +
                                     std::to_string(t0 + (k + 1) * dt));
            if (y[c] < 0.0) {
                y[c] = 0.0;
                ++tr.clamp_count;
            }
        }
        tr.times.push_back(t0 + (k + 1) * dt);
        tr.states.push_back(y);
        tr.case_flux.push_back(flux_of(p, y));
    }
    return tr;
}

std::vector<AnnualIncidence> annual_new_cases(const Trajectory& tr) {
    if (tr.times.size() < 2) throw SpanTooShort("trajectory has fewer than two grid points");
    const double t0 = tr.times.front();
    const double tend = tr.times.back();
    const double dt = tr.times[1] - tr.times[0];
    if (tend - t0 < 1.0 - 0.5 * dt)
        throw SpanTooShort("trajectory covers less than one calendar year");

    auto grid_index = [&](double t) { return std::lround((t - t0) / dt); };

    std::vector<AnnualIncidence> out;
    const int y_first = 2005 + static_cast<int>(std::ceil(t0 - 0.5 * dt));
    for (int year = y_first;; ++year) {
        const double a = year - 2005.0;
        const double b = a + 1.0;
        if (b > tend + 0.5 * dt) break;
        const long i0 = grid_index(a);
        const long i1 = std::min<long>(grid_index(b), static_cast<long>(tr.times.size()) - 1);
        Vec3 acc = Vec3::Zero();
        for (long i = i0; i < i1; ++i)
            acc += 0.5 * dt * (tr.case_flux[i] + tr.case_flux[i + 1]);
        out.push_back({year, acc, acc.sum()});
    }
    if (out.empty()) throw SpanTooShort("no whole calendar year inside the trajectory span");
    return out;
}

}  // namespace tbage
