#pragma once

#include <functional>
#include <vector>

#include "tbage/model.hpp"
#include "tbage/series.hpp"

namespace tbage {

struct NelderMeadConfig {
    long max_evals = 2000;
    double ftol_rel = 1e-6;
    double simplex_scale = 0.1;
    bool restarts = true;
};

struct NelderMeadResult {
    std::vector<double> x;
    double fval = 0.0;
    long evals = 0;
    bool converged = false;
    std::vector<double> trace;  // best value seen, per improvement
};

// Downhill simplex with out-of-range proposals reflected back into [lo, hi].
// When restarts are enabled the simplex is rebuilt around the incumbent until
// a cycle brings no relative improvement or the budget runs out.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0, const std::vector<double>& lo,
                             const std::vector<double>& hi, const NelderMeadConfig& cfg = {});

struct FitConfig {
    double dt = 1e-2;
    NelderMeadConfig nm;
};

struct FitResult {
    Params params;  // base with fitted transmission values applied
    Vec3 beta;
    double omega = 0.0;
    double r2 = 0.0;
    Vec3 r2_group;
    std::vector<double> residuals;  // observed minus predicted totals, fit years
    long iterations = 0;
    bool converged = false;
    std::vector<double> loss_trace;
};

double r_squared(const std::vector<double>& predicted, const std::vector<double>& observed);

// Staged least squares on the 2005-2018 annual counts: group 1 drives
// (beta1, omega), then group 2 drives beta2, then group 3 drives beta3.
FitResult fit(const CaseSeries& data, const Params& base, const FitConfig& cfg = {});

struct HoldoutRow {
    int year;
    double predicted;
    double observed;
    double rel_err;
};

// Compare the fitted model against total-only years after the fit window.
std::vector<HoldoutRow> holdout_check(const FitResult& fr, const CaseSeries& data,
                                      double dt = 1e-2);

}  // namespace tbage
