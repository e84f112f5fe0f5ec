#include "tbage/model.hpp"

#include <cmath>

#include "tbage/errors.hpp"

namespace tbage {

void Params::validate() const {
    auto nonneg = [](double v, const char* name) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw DomainError(std::string(name) + " must be finite and nonnegative");
    };
    nonneg(A, "A");
    if (!(rho >= 0.0 && rho <= 1.0)) throw DomainError("rho must lie in [0,1]");
    if (!(omega >= 0.0 && omega <= 1.0)) throw DomainError("omega must lie in [0,1]");
    for (int g = 0; g < kGroups; ++g) {
        nonneg(mu[g], "mu");
        nonneg(sigma[g], "sigma");
        nonneg(gamma[g], "gamma");
        nonneg(d[g], "d");
    }
    nonneg(theta[0], "theta1");
    nonneg(theta[1], "theta2");
    mixing.validate();
    if (n_mode == NMode::constant)
        for (int g = 0; g < kGroups; ++g)
            if (!(n_fixed[g] > 0.0) || !std::isfinite(n_fixed[g]))
                throw DomainError("n_fixed must be positive in constant mode");
}

Params preset(const std::string& name) {
    Params p;
    p.mu = Vec3(0.0017, 0.0023, 0.0367);
    p.gamma = Vec3::Constant(0.496);
    p.sigma = Vec3::Constant(6.0);
    p.rho = 1.0;
    p.mixing.a = Vec3(12 * 365.0, 10 * 365.0, 8 * 365.0);
    p.mixing.eps = Vec3(0.4, 0.3, 0.3);
    p.n_fixed = Vec3(265040000.0, 941970000.0, 100550000.0);
    if (name == "varying_n") {
        p.A = 1.644e7;
        p.omega = 0.728;
        p.theta = Vec2(0.079, 0.0067);
        p.d = Vec3::Constant(0.0025);
        p.mixing.beta = Vec3(1.325e-4, 7.402e-5, 4.690e-4);
        p.n_mode = NMode::varying;
    } else if (name == "constant_n") {
        p.A = 6307284.0;
        p.omega = 0.52;
        p.theta = Vec2(0.0221, 0.0039);
        p.d = Vec3::Zero();
        p.mixing.beta = Vec3(1.157e-5, 1.247e-4, 3.673e-4);
        p.n_mode = NMode::constant;
    } else {
        throw UnknownPreset(name);
    }
    return p;
}

State initial_state() {
    State y;
    y << 264991621.0, 2934.0, 26048.0, 19397.0,      // group 1
        940454335.0, 83257.0, 881944.0, 550464.0,    // group 2
        99961110.0, 31212.0, 351316.0, 206362.0;     // group 3
    return y;
}

Vec3 hazard_sizes(const Params& p, const State& y) {
    return p.n_mode == NMode::constant ? p.n_fixed : group_sizes(y);
}

State rhs(const Params& p, const State& y) {
    const Vec3 n = hazard_sizes(p, y);
    const Vec3 f = mixing_fractions(p.mixing, n);
    const Mat3 c = contact_matrix(p.mixing, f);
    const Vec3 I(y[iI(0)], y[iI(1)], y[iI(2)]);
    const Vec3 lam = force_of_infection(p.mixing, c, I, n);

    const double th1 = p.theta[0], th2 = p.theta[1];
    State dy;

    dy[iS(0)] = (1.0 - p.rho * p.omega) * p.A - (lam[0] + p.mu[0] + th1) * y[iS(0)];
    dy[iE(0)] = lam[0] * y[iS(0)] - (p.mu[0] + p.sigma[0] + th1) * y[iE(0)];
    dy[iI(0)] = p.sigma[0] * y[iE(0)] - (p.gamma[0] + p.d[0] + p.mu[0] + th1) * y[iI(0)];
    dy[iR(0)] = p.rho * p.omega * p.A + p.gamma[0] * y[iI(0)] - (p.mu[0] + th1) * y[iR(0)];

    dy[iS(1)] = th1 * y[iS(0)] - (lam[1] + p.mu[1] + th2) * y[iS(1)];
    dy[iE(1)] = th1 * y[iE(0)] + lam[1] * y[iS(1)] - (p.mu[1] + p.sigma[1] + th2) * y[iE(1)];
    dy[iI(1)] = th1 * y[iI(0)] + p.sigma[1] * y[iE(1)] -
                (p.gamma[1] + p.d[1] + p.mu[1] + th2) * y[iI(1)];
    dy[iR(1)] = th1 * y[iR(0)] + p.gamma[1] * y[iI(1)] - (p.mu[1] + th2) * y[iR(1)];

    dy[iS(2)] = th2 * y[iS(1)] - (lam[2] + p.mu[2]) * y[iS(2)];
    dy[iE(2)] = th2 * y[iE(1)] + lam[2] * y[iS(2)] - (p.mu[2] + p.sigma[2]) * y[iE(2)];
    dy[iI(2)] = th2 * y[iI(1)] + p.sigma[2] * y[iE(2)] - (p.gamma[2] + p.d[2] + p.mu[2]) * y[iI(2)];
    dy[iR(2)] = th2 * y[iR(1)] + p.gamma[2] * y[iI(2)] - p.mu[2] * y[iR(2)];

    return dy;
}

}  // namespace tbage
