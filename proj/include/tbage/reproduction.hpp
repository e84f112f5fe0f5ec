#pragma once

#include "tbage/model.hpp"

namespace tbage {

// Group sizes used in the hazard denominators and mixing fractions when
// evaluating the reproduction number:
//   dfe     - sizes implied by the disease-free equilibrium itself
//   initial - the 2005 population split (matches the published value)
enum class SizeMode { dfe, initial };

// Disease-free equilibrium (E = I = 0).
struct Dfe {
    Vec3 S0;
    Vec3 R0;
    Vec3 n0() const { return S0 + R0; }
};

Dfe disease_free_equilibrium(const Params& p);

struct NextGen {
    Eigen::Matrix<double, 6, 6> F;     // new infections into E/I blocks
    Eigen::Matrix<double, 6, 6> V;     // transitions out of E/I blocks
    Eigen::Matrix<double, 6, 6> Vinv;  // closed-form inverse of V
};

NextGen next_gen_matrices(const Params& p, SizeMode mode = SizeMode::dfe);

// Closed-form inverse of the lower-triangular transition matrix.
Eigen::Matrix<double, 6, 6> transition_inverse(const Params& p);

// Spectral radius of a nonnegative matrix by power iteration from the
// all-ones vector; relative change below tol terminates.
double spectral_radius_power(const Eigen::MatrixXd& m, double tol = 1e-12,
                             long max_iter = 100000);

double reproduction_number(const Params& p, SizeMode mode = SizeMode::dfe);

}  // namespace tbage
