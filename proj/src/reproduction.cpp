#include "tbage/reproduction.hpp"

#include <cmath>

#include "tbage/errors.hpp"

namespace tbage {

Dfe disease_free_equilibrium(const Params& p) {
    const double e1 = p.mu[0] + p.theta[0];
    const double e2 = p.mu[1] + p.theta[1];
    const double e3 = p.mu[2];
    if (!(e1 > 0.0) || !(e2 > 0.0) || !(e3 > 0.0))
        throw DegenerateParams("every group needs a positive exit rate");
    Dfe q;
    q.S0[0] = (1.0 - p.rho * p.omega) * p.A / e1;
    q.R0[0] = p.rho * p.omega * p.A / e1;
    q.S0[1] = p.theta[0] * q.S0[0] / e2;
    q.R0[1] = p.theta[0] * q.R0[0] / e2;
    q.S0[2] = p.theta[1] * q.S0[1] / e3;
    q.R0[2] = p.theta[1] * q.R0[1] / e3;
    return q;
}

Eigen::Matrix<double, 6, 6> transition_inverse(const Params& p) {
    const double th1 = p.theta[0], th2 = p.theta[1];
    const double A1 = p.mu[0] + p.sigma[0] + th1;
    const double A2 = p.mu[0] + p.d[0] + p.gamma[0] + th1;
    const double A3 = p.mu[1] + p.sigma[1] + th2;
    const double A4 = p.mu[1] + p.d[1] + p.gamma[1] + th2;
    const double A5 = p.mu[2] + p.sigma[2];
    const double A6 = p.mu[2] + p.d[2] + p.gamma[2];
    for (double v : {A1, A2, A3, A4, A5, A6})
        if (!(v > 0.0)) throw DegenerateParams("transition matrix has a zero diagonal rate");

    const double B1 = p.sigma[0] * th1 / (A1 * A2 * A4) + p.sigma[1] * th1 / (A1 * A3 * A4);
    const double B2 = p.sigma[0] * th1 * th2 / (A1 * A2 * A4 * A6) +
                      p.sigma[1] * th1 * th2 / (A1 * A3 * A4 * A6) +
                      p.sigma[2] * th1 * th2 / (A1 * A3 * A5 * A6);
    const double B3 = p.sigma[1] * th2 / (A3 * A4 * A6) + p.sigma[2] * th2 / (A3 * A5 * A6);

    Eigen::Matrix<double, 6, 6> w = Eigen::Matrix<double, 6, 6>::Zero();
    w(0, 0) = 1.0 / A1;
    w(1, 0) = p.sigma[0] / (A1 * A2);
    w(1, 1) = 1.0 / A2;
    w(2, 0) = th1 / (A1 * A3);
    w(2, 2) = 1.0 / A3;
    w(3, 0) = B1;
    w(3, 1) = th1 / (A2 * A4);
    w(3, 2) = p.sigma[1] / (A3 * A4);
    w(3, 3) = 1.0 / A4;
    w(4, 0) = th1 * th2 / (A1 * A3 * A5);
    w(4, 2) = th2 / (A3 * A5);
    w(4, 4) = 1.0 / A5;
    w(5, 0) = B2;
    w(5, 1) = th1 * th2 / (A2 * A4 * A6);
    w(5, 2) = B3;
    w(5, 3) = th2 / (A4 * A6);
    w(5, 4) = p.sigma[2] / (A5 * A6);
    w(5, 5) = 1.0 / A6;
    return w;
}

NextGen next_gen_matrices(const Params& p, SizeMode mode) {
    p.validate();
    const Dfe q = disease_free_equilibrium(p);
    const Vec3 n = mode == SizeMode::dfe ? q.n0() : group_sizes(initial_state());

    const Vec3 f = mixing_fractions(p.mixing, n);
    const Mat3 c = contact_matrix(p.mixing, f);

    NextGen g;
    g.F.setZero();
    for (int i = 0; i < kGroups; ++i)
        for (int j = 0; j < kGroups; ++j)
            g.F(2 * i, 2 * j + 1) = p.mixing.a[i] * p.mixing.beta[i] * c(i, j) * q.S0[i] / n[j];

    const double th1 = p.theta[0], th2 = p.theta[1];
    g.V.setZero();
    g.V(0, 0) = p.mu[0] + p.sigma[0] + th1;
    g.V(1, 1) = p.mu[0] + p.d[0] + p.gamma[0] + th1;
    g.V(2, 2) = p.mu[1] + p.sigma[1] + th2;
    g.V(3, 3) = p.mu[1] + p.d[1] + p.gamma[1] + th2;
    g.V(4, 4) = p.mu[2] + p.sigma[2];
    g.V(5, 5) = p.mu[2] + p.d[2] + p.gamma[2];
    g.V(1, 0) = -p.sigma[0];
    g.V(3, 2) = -p.sigma[1];
    g.V(5, 4) = -p.sigma[2];
    g.V(2, 0) = -th1;
    g.V(3, 1) = -th1;
    g.V(4, 2) = -th2;
    g.V(5, 3) = -th2;

    g.Vinv = transition_inverse(p);
    return g;
}

double spectral_radius_power(const Eigen::MatrixXd& m, double tol, long max_iter) {
    const long n = m.rows();
    Eigen::VectorXd v = Eigen::VectorXd::Ones(n);
    double lambda = 0.0;
    for (long it = 0; it < max_iter; ++it) {
        Eigen::VectorXd w = m * v;
        const double norm = w.norm();
        if (norm == 0.0) return 0.0;
        const double next = v.dot(w) / v.dot(v);
        v = w / norm;
        if (it > 0 && std::abs(next - lambda) <= tol * std::abs(next)) return std::abs(next);
        lambda = next;
    }
    throw NoConvergence("power iteration did not settle");
}

double reproduction_number(const Params& p, SizeMode mode) {
    const NextGen g = next_gen_matrices(p, mode);
    return spectral_radius_power(g.F * g.Vinv);
}

}  // namespace tbage
