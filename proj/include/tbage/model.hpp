#pragma once

#include <string>

#include "tbage/mixing.hpp"
#include "tbage/types.hpp"

namespace tbage {

enum class NMode { varying, constant };

// Demographic and disease parameters for the three-group SEIR system.
// Groups: 1 = children, 2 = working age, 3 = elderly. Rates are per year.
struct Params {
    double A = 0.0;      // births per year
    double rho = 1.0;    // vaccination coverage among newborns
    double omega = 0.0;  // vaccine effectiveness
    Vec3 mu;             // natural mortality
    Vec2 theta;          // aging rates out of groups 1 and 2
    Vec3 sigma;          // progression E -> I
    Vec3 gamma;          // recovery I -> R
    Vec3 d;              // disease-induced mortality
    MixingSpec mixing;
    NMode n_mode = NMode::varying;
    Vec3 n_fixed;  // group sizes pinned in the hazard when n_mode == constant

    void validate() const;
};

Params preset(const std::string& name);

// Compartment counts for 2005, the simulation origin (t = 0).
State initial_state();

// Group sizes used inside the infection hazard for a given state.
Vec3 hazard_sizes(const Params& p, const State& y);

// Time derivative of the compartment vector.
State rhs(const Params& p, const State& y);

}  // namespace tbage
