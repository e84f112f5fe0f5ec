#pragma once

#include "tbage/types.hpp"

namespace tbage {

// Group-level contact structure: per-capita contact rates a (contacts/year),
// within-group preference weights eps in [0,1), and per-contact transmission
// probabilities beta.
struct MixingSpec {
    Vec3 a;
    Vec3 eps;
    Vec3 beta;

    void validate() const;
};

// Share of the non-reserved contact pool supplied by each group.
// Requires at least one group with eps < 1 and positive activity.
Vec3 mixing_fractions(const MixingSpec& mix, const Vec3& n);

// c(i,j): fraction of group i's contacts made with group j.
// Rows sum to one by construction.
Mat3 contact_matrix(const MixingSpec& mix, const Vec3& f);

// Per-susceptible infection hazard for each group.
Vec3 force_of_infection(const MixingSpec& mix, const Mat3& c, const Vec3& infectious,
                        const Vec3& n);

}  // namespace tbage
