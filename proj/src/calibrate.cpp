#include "tbage/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tbage/errors.hpp"
#include "tbage/simulate.hpp"

namespace tbage {

namespace {

double reflect_into(double v, double lo, double hi) {
    if (v >= lo && v <= hi) return v;
    const double w = hi - lo;
    double u = std::fmod(v - lo, 2.0 * w);
    if (u < 0.0) u += 2.0 * w;
    return lo + (w - std::abs(u - w));
}

struct CycleResult {
    std::vector<double> x;
    double fval;
    long evals;
    bool by_spread;
    std::vector<double> trace;
};

CycleResult nm_cycle(const std::function<double(const std::vector<double>&)>& f,
                     const std::vector<double>& x0, const std::vector<double>& lo,
                     const std::vector<double>& hi, long max_evals, double ftol_rel,
                     double simplex_scale) {
    const size_t n = x0.size();
    auto clamp = [&](std::vector<double> x) {
        for (size_t i = 0; i < n; ++i) x[i] = reflect_into(x[i], lo[i], hi[i]);
        return x;
    };
    long evals = 0;
    auto F = [&](const std::vector<double>& x) {
        ++evals;
        return f(clamp(x));
    };

    std::vector<std::vector<double>> pts;
    pts.push_back(x0);
    for (size_t i = 0; i < n; ++i) {
        auto p = x0;
        p[i] += p[i] != 0.0 ? simplex_scale * std::abs(p[i]) : simplex_scale;
        pts.push_back(p);
    }
    std::vector<double> vals;
    for (auto& p : pts) vals.push_back(F(p));

    std::vector<double> trace{*std::min_element(vals.begin(), vals.end())};
    bool by_spread = false;

    while (evals < max_evals) {
        std::vector<size_t> order(pts.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return vals[a] < vals[b]; });
        std::vector<std::vector<double>> spts;
        std::vector<double> svals;
        for (size_t i : order) {
            spts.push_back(pts[i]);
            svals.push_back(vals[i]);
        }
        pts = spts;
        vals = svals;

        const double spread =
            std::abs(vals.back() - vals.front()) / std::max(1e-30, std::abs(vals.front()));
        if (spread < ftol_rel) {
            by_spread = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (size_t i = 0; i + 1 < pts.size(); ++i)
            for (size_t j = 0; j < n; ++j) centroid[j] += pts[i][j];
        for (size_t j = 0; j < n; ++j) centroid[j] /= static_cast<double>(n);

        auto blend = [&](double w) {
            std::vector<double> x(n);
            for (size_t j = 0; j < n; ++j) x[j] = centroid[j] + w * (centroid[j] - pts.back()[j]);
            return x;
        };

        const auto xr = blend(1.0);
        const double fr = F(xr);
        if (fr < vals.front()) {
            const auto xe = blend(2.0);
            const double fe = F(xe);
            if (fe < fr) {
                pts.back() = xe;
                vals.back() = fe;
            } else {
                pts.back() = xr;
                vals.back() = fr;
            }
        } else if (fr < vals[vals.size() - 2]) {
            pts.back() = xr;
            vals.back() = fr;
        } else {
            const auto xc = blend(-0.5);
            const double fc = F(xc);
            if (fc < vals.back()) {
                pts.back() = xc;
                vals.back() = fc;
            } else {
                for (size_t i = 1; i < pts.size(); ++i) {
                    for (size_t j = 0; j < n; ++j)
                        pts[i][j] = pts[0][j] + 0.5 * (pts[i][j] - pts[0][j]);
                    vals[i] = F(pts[i]);
                }
            }
        }
        trace.push_back(*std::min_element(vals.begin(), vals.end()));
    }

    size_t best = 0;
    for (size_t i = 1; i < vals.size(); ++i)
        if (vals[i] < vals[best]) best = i;
    return {clamp(pts[best]), vals[best], evals, by_spread, trace};
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0, const std::vector<double>& lo,
                             const std::vector<double>& hi, const NelderMeadConfig& cfg) {
    if (x0.size() != lo.size() || x0.size() != hi.size() || x0.empty())
        throw DomainError("mismatched optimizer bounds");
    for (size_t i = 0; i < x0.size(); ++i)
        if (!(lo[i] < hi[i])) throw DomainError("lower bound must be below upper bound");

    NelderMeadResult res;
    res.x = x0;
    if (cfg.max_evals <= 0) {
        res.fval = std::numeric_limits<double>::quiet_NaN();
        return res;
    }

    double best_v = std::numeric_limits<double>::infinity();
    long evals_left = cfg.max_evals;
    std::vector<double> x = x0;
    bool last_by_spread = false;
    while (evals_left > 0) {
        const auto cyc =
            nm_cycle(f, x, lo, hi, evals_left, cfg.ftol_rel, cfg.simplex_scale);
        evals_left -= cyc.evals;
        last_by_spread = cyc.by_spread;
        for (double v : cyc.trace)
            res.trace.push_back(std::min(v, res.trace.empty() ? v : res.trace.back()));
        const bool improved =
            !std::isfinite(best_v) || cyc.fval < best_v * (1.0 - 1e-9);
        if (cyc.fval < best_v) {
            best_v = cyc.fval;
            res.x = cyc.x;
        }
        if (!cfg.restarts || !improved) break;
        x = res.x;
    }
    res.fval = best_v;
    res.evals = cfg.max_evals - evals_left;
    res.converged = last_by_spread;
    return res;
}

double r_squared(const std::vector<double>& predicted, const std::vector<double>& observed) {
    if (predicted.size() != observed.size() || observed.empty())
        throw DegenerateSeries("prediction and observation lengths differ");
    const double mean =
        std::accumulate(observed.begin(), observed.end(), 0.0) / observed.size();
    double rss = 0.0, tss = 0.0;
    for (size_t i = 0; i < observed.size(); ++i) {
        rss += (observed[i] - predicted[i]) * (observed[i] - predicted[i]);
        tss += (observed[i] - mean) * (observed[i] - mean);
    }
    if (!(tss > 0.0)) throw DegenerateSeries("observed series has zero variance");
    return 1.0 - rss / tss;
}

namespace {

constexpr int kFitFirst = 2005;
constexpr int kFitLast = 2018;

Eigen::Matrix<double, 14, 3> fit_window(const CaseSeries& data) {
    Eigen::Matrix<double, 14, 3> obs;
    for (int year = kFitFirst; year <= kFitLast; ++year) {
        const auto it = std::find_if(data.begin(), data.end(),
                                     [&](const CaseRow& r) { return r.year == year; });
        if (it == data.end() || !it->has_groups)
            throw DataGap("per-group counts required for " + std::to_string(year));
        obs.row(year - kFitFirst) = it->groups.transpose();
    }
    return obs;
}

Eigen::Matrix<double, 14, 3> predict_window(const Params& p, double dt) {
    const auto tr = integrate(p, initial_state(), 0.0, kFitLast + 1 - 2005, dt);
    const auto annual = annual_new_cases(tr);
    Eigen::Matrix<double, 14, 3> pred;
    for (const auto& row : annual)
        if (row.year >= kFitFirst && row.year <= kFitLast)
            pred.row(row.year - kFitFirst) = row.by_group.transpose();
    return pred;
}

}  // namespace

FitResult fit(const CaseSeries& data, const Params& base, const FitConfig& cfg) {
    base.validate();
    const auto obs = fit_window(data);

    FitResult out;
    Params p = base;
    out.iterations = 0;
    out.converged = true;

    const auto stage = [&](const std::vector<double>& x0, const std::vector<double>& lo,
                           const std::vector<double>& hi, auto&& objective) {
        const auto r = nelder_mead(objective, x0, lo, hi, cfg.nm);
        out.iterations += r.evals;
        if (cfg.nm.max_evals > 0) out.converged = out.converged && r.converged;
        for (double v : r.trace)
            out.loss_trace.push_back(
                out.loss_trace.empty() ? v : std::min(v, out.loss_trace.back()));
        return r.x;
    };

    const auto sse_group = [&](const Params& q, int g) {
        const auto pred = predict_window(q, cfg.dt);
        return (pred.col(g) - obs.col(g)).squaredNorm();
    };

    if (cfg.nm.max_evals > 0) {
        auto x = stage({p.mixing.beta[0], p.omega}, {1e-8, 0.0}, {1e-2, 1.0},
                       [&](const std::vector<double>& v) {
                           Params q = p;
                           q.mixing.beta[0] = v[0];
                           q.omega = v[1];
                           return sse_group(q, 0);
                       });
        p.mixing.beta[0] = x[0];
        p.omega = x[1];

        x = stage({p.mixing.beta[1]}, {1e-8}, {1e-2}, [&](const std::vector<double>& v) {
            Params q = p;
            q.mixing.beta[1] = v[0];
            return sse_group(q, 1);
        });
        p.mixing.beta[1] = x[0];

        x = stage({p.mixing.beta[2]}, {1e-8}, {1e-2}, [&](const std::vector<double>& v) {
            Params q = p;
            q.mixing.beta[2] = v[0];
            return sse_group(q, 2);
        });
        p.mixing.beta[2] = x[0];
    } else {
        out.converged = false;
    }

    out.params = p;
    out.beta = p.mixing.beta;
    out.omega = p.omega;

    const auto pred = predict_window(p, cfg.dt);
    std::vector<double> pred_tot, obs_tot;
    for (int i = 0; i < 14; ++i) {
        pred_tot.push_back(pred.row(i).sum());
        obs_tot.push_back(obs.row(i).sum());
        out.residuals.push_back(obs_tot.back() - pred_tot.back());
    }
    out.r2 = r_squared(pred_tot, obs_tot);
    for (int g = 0; g < kGroups; ++g) {
        std::vector<double> pg, og;
        for (int i = 0; i < 14; ++i) {
            pg.push_back(pred(i, g));
            og.push_back(obs(i, g));
        }
        out.r2_group[g] = r_squared(pg, og);
    }
    return out;
}

std::vector<HoldoutRow> holdout_check(const FitResult& fr, const CaseSeries& data, double dt) {
    std::vector<const CaseRow*> rows;
    for (const auto& r : data)
        if (r.year > kFitLast) rows.push_back(&r);
    if (rows.empty()) throw DataGap("no observations after the fit window");

    int last = kFitLast;
    for (const auto* r : rows) last = std::max(last, r->year);
    const auto tr = integrate(fr.params, initial_state(), 0.0, last + 1 - 2005, dt);
    const auto annual = annual_new_cases(tr);

    std::vector<HoldoutRow> out;
    for (const auto* r : rows) {
        const auto it = std::find_if(annual.begin(), annual.end(),
                                     [&](const AnnualIncidence& a) { return a.year == r->year; });
        if (it == annual.end()) continue;
        out.push_back({r->year, it->total, r->total, (it->total - r->total) / r->total});
    }
    return out;
}

}  // namespace tbage
