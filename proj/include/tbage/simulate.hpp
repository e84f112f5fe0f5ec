#pragma once

#include <vector>

#include "tbage/model.hpp"

namespace tbage {

constexpr double kMaxStep = 0.05;
constexpr double kDefaultStep = 1e-3;

struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    std::vector<Vec3> case_flux;  // sigma_g * E_g at each grid point
    long clamp_count = 0;         // entries pushed back to zero after a step
};

// Classical fixed-step RK4 from t0 to (approximately) t1; the final grid time
// lands within one step of t1. Negative compartment values are clamped to
// zero after each step and counted.
Trajectory integrate(const Params& p, const State& y0, double t0, double t1,
                     double dt = kDefaultStep);

struct AnnualIncidence {
    int year;
    Vec3 by_group;
    double total;
};

// Trapezoid integral of the progression flux over each whole calendar year
// covered by the trajectory. Year y spans t in [y-2005, y+1-2005].
std::vector<AnnualIncidence> annual_new_cases(const Trajectory& tr);

}  // namespace tbage
