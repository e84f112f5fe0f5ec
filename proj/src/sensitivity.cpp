#include "tbage/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "tbage/errors.hpp"
#include "tbage/reproduction.hpp"

namespace tbage {

namespace {

double uniform53(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

std::vector<double> average_ranks(const std::vector<double>& v) {
    const size_t n = v.size();
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(n);
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
        const double r = 0.5 * (i + j) + 1.0;
        for (size_t k = i; k <= j; ++k) ranks[order[k]] = r;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

ParamRanges default_ranges(const Params& base, double rel) {
    ParamRanges r;
    auto add = [&](const std::string& name, double v, double cap = 0.0) {
        r.names.push_back(name);
        r.lo.push_back((1.0 - rel) * v);
        double hi = (1.0 + rel) * v;
        if (cap > 0.0) hi = std::min(hi, cap);
        r.hi.push_back(hi);
    };
    add("A", base.A);
    for (int g = 0; g < kGroups; ++g) add("beta" + std::to_string(g + 1), base.mixing.beta[g]);
    for (int g = 0; g < kGroups; ++g) add("gamma" + std::to_string(g + 1), base.gamma[g]);
    for (int g = 0; g < kGroups; ++g) add("sigma" + std::to_string(g + 1), base.sigma[g]);
    add("omega", base.omega, 1.0);
    for (int g = 0; g < kGroups; ++g) add("mu" + std::to_string(g + 1), base.mu[g]);
    add("theta1", base.theta[0]);
    add("theta2", base.theta[1]);
    for (int g = 0; g < kGroups; ++g) add("a" + std::to_string(g + 1), base.mixing.a[g]);
    for (int g = 0; g < kGroups; ++g) add("eps" + std::to_string(g + 1), base.mixing.eps[g], 0.95);
    return r;
}

namespace {

double* named_slot(Params& p, const std::string& k) {
    if (k == "A") return &p.A;
    if (k == "rho") return &p.rho;
    if (k == "omega") return &p.omega;
    if (k == "theta1") return &p.theta[0];
    if (k == "theta2") return &p.theta[1];
    auto idx = [](char c) { return c - '1'; };
    if (k.size() == 3 && k.rfind("mu", 0) == 0 && k[2] >= '1' && k[2] <= '3')
        return &p.mu[idx(k[2])];
    if (k.size() == 6 && k.rfind("sigma", 0) == 0 && k[5] >= '1' && k[5] <= '3')
        return &p.sigma[idx(k[5])];
    if (k.size() == 6 && k.rfind("gamma", 0) == 0 && k[5] >= '1' && k[5] <= '3')
        return &p.gamma[idx(k[5])];
    if (k.size() == 2 && k[0] == 'd' && k[1] >= '1' && k[1] <= '3') return &p.d[idx(k[1])];
    if (k.size() == 5 && k.rfind("beta", 0) == 0 && k[4] >= '1' && k[4] <= '3')
        return &p.mixing.beta[idx(k[4])];
    if (k.size() == 2 && k[0] == 'a' && k[1] >= '1' && k[1] <= '3')
        return &p.mixing.a[idx(k[1])];
    if (k.size() == 4 && k.rfind("eps", 0) == 0 && k[3] >= '1' && k[3] <= '3')
        return &p.mixing.eps[idx(k[3])];
    return nullptr;
}

}  // namespace

Params apply_named(const Params& base, const std::vector<std::string>& names,
                   const std::vector<double>& values) {
    if (names.size() != values.size()) throw DomainError("name/value count mismatch");
    Params p = base;
    for (size_t i = 0; i < names.size(); ++i) {
        double* slot = named_slot(p, names[i]);
        if (!slot) throw UnknownKey(names[i]);
        *slot = values[i];
    }
    return p;
}

double get_named(const Params& p, const std::string& name) {
    Params copy = p;
    const double* slot = named_slot(copy, name);
    if (!slot) throw UnknownKey(name);
    return *slot;
}

std::vector<std::vector<double>> lhs_sample(const ParamRanges& ranges, long n,
                                            std::uint64_t seed) {
    const size_t m = ranges.names.size();
    if (m == 0 || ranges.lo.size() != m || ranges.hi.size() != m)
        throw DomainError("empty or inconsistent ranges");
    if (n < 2) throw DomainError("need at least two samples");
    for (size_t j = 0; j < m; ++j)
        if (!(ranges.lo[j] <= ranges.hi[j])) throw DomainError("range bounds out of order");

    std::mt19937_64 rng(seed);
    std::vector<std::vector<double>> x(n, std::vector<double>(m));
    std::vector<long> perm(n);
    for (size_t j = 0; j < m; ++j) {
        for (long i = 0; i < n; ++i) perm[i] = i;
        for (long i = n - 1; i > 0; --i) {
            const long k = static_cast<long>(rng() % static_cast<std::uint64_t>(i + 1));
            std::swap(perm[i], perm[k]);
        }
        const double width = (ranges.hi[j] - ranges.lo[j]) / static_cast<double>(n);
        for (long i = 0; i < n; ++i)
            x[i][j] = ranges.lo[j] + (perm[i] + uniform53(rng)) * width;
    }
    return x;
}

std::vector<double> prcc(const std::vector<std::vector<double>>& x,
                         const std::vector<double>& y) {
    const long n = static_cast<long>(x.size());
    if (n < 3 || y.size() != x.size()) throw DomainError("need at least three samples");
    const size_t m = x.front().size();

    Eigen::MatrixXd rx(n, m);
    for (size_t j = 0; j < m; ++j) {
        std::vector<double> col(n);
        for (long i = 0; i < n; ++i) col[i] = x[i][j];
        const auto rk = average_ranks(col);
        for (long i = 0; i < n; ++i) rx(i, j) = rk[i];
    }
    const auto ry_v = average_ranks(y);
    Eigen::VectorXd ry(n);
    for (long i = 0; i < n; ++i) ry[i] = ry_v[i];

    const double rank_scale = static_cast<double>(n) * n;
    for (size_t j = 0; j < m; ++j) {
        const double tss = (rx.col(j).array() - rx.col(j).mean()).matrix().squaredNorm();
        if (tss <= 1e-12 * rank_scale)
            throw RankDegenerate("input column " + std::to_string(j) + " has constant ranks");
    }
    if ((ry.array() - ry.mean()).matrix().squaredNorm() <= 1e-12 * rank_scale)
        throw RankDegenerate("output has constant ranks");

    std::vector<double> out(m);
    for (size_t j = 0; j < m; ++j) {
        Eigen::MatrixXd z(n, m);
        z.col(0).setOnes();
        size_t c = 1;
        for (size_t k = 0; k < m; ++k)
            if (k != j) z.col(c++) = rx.col(k);

        const auto qr = z.colPivHouseholderQr();
        const Eigen::VectorXd ex = rx.col(j) - z * qr.solve(rx.col(j));
        const Eigen::VectorXd ey = ry - z * qr.solve(ry);

        const double sx = ex.squaredNorm(), sy = ey.squaredNorm();
        if (sx <= 1e-12 * rank_scale)
            throw RankDegenerate("input column " + std::to_string(j) +
                                 " is collinear with the others");
        if (sy <= 1e-20 * rank_scale) {
            out[j] = 0.0;
            continue;
        }
        out[j] = ex.dot(ey) / std::sqrt(sx * sy);
    }
    return out;
}

PrccResult sensitivity_run(const Params& base, long n, std::uint64_t seed,
                           const ParamRanges* ranges) {
    base.validate();
    const ParamRanges r = ranges ? *ranges : default_ranges(base);
    const auto draws = lhs_sample(r, n, seed);

    std::vector<std::vector<double>> kept;
    std::vector<double> rv;
    long failures = 0;
    for (const auto& row : draws) {
        try {
            const Params p = apply_named(base, r.names, row);
            p.validate();
            rv.push_back(reproduction_number(p, SizeMode::initial));
            kept.push_back(row);
        } catch (const Error&) {
            ++failures;
        }
    }
    if (failures * 100 > n)
        throw TooManyFailures(std::to_string(failures) + " of " + std::to_string(n) +
                              " draws failed");

    const auto coefs = prcc(kept, rv);
    PrccResult out;
    out.n = n;
    out.seed = seed;
    out.failures = failures;
    for (size_t j = 0; j < r.names.size(); ++j) out.rows.push_back({r.names[j], coefs[j]});
    return out;
}

}  // namespace tbage
