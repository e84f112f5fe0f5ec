#include "tbage/mixing.hpp"

#include <cmath>

#include "tbage/errors.hpp"

namespace tbage {

void MixingSpec::validate() const {
    for (int g = 0; g < kGroups; ++g) {
        if (!(a[g] > 0.0) || !std::isfinite(a[g]))
            throw DomainError("contact rate a" + std::to_string(g + 1) + " must be positive");
        if (!(eps[g] >= 0.0 && eps[g] <= 1.0))
            throw DomainError("eps" + std::to_string(g + 1) + " must lie in [0,1]");
        if (!(beta[g] >= 0.0 && beta[g] <= 1.0))
            throw DomainError("beta" + std::to_string(g + 1) + " must lie in [0,1]");
    }
    if (eps[0] >= 1.0 && eps[1] >= 1.0 && eps[2] >= 1.0)
        throw DegenerateMixing("all groups fully assortative, no shared contact pool");
}

Vec3 mixing_fractions(const MixingSpec& mix, const Vec3& n) {
    for (int g = 0; g < kGroups; ++g)
        if (!(n[g] > 0.0) || !std::isfinite(n[g]))
            throw InvalidState("group size n" + std::to_string(g + 1) + " must be positive");
    Vec3 w;
    double denom = 0.0;
    for (int g = 0; g < kGroups; ++g) {
        w[g] = (1.0 - mix.eps[g]) * mix.a[g] * n[g];
        denom += w[g];
    }
    if (!(denom > 0.0))
        throw DegenerateMixing("shared contact pool is empty");
    return w / denom;
}

Mat3 contact_matrix(const MixingSpec& mix, const Vec3& f) {
    Mat3 c;
    for (int i = 0; i < kGroups; ++i)
        for (int j = 0; j < kGroups; ++j)
            c(i, j) = (i == j ? mix.eps[i] : 0.0) + (1.0 - mix.eps[i]) * f[j];
    return c;
}

Vec3 force_of_infection(const MixingSpec& mix, const Mat3& c, const Vec3& infectious,
                        const Vec3& n) {
    Vec3 lambda;
    for (int i = 0; i < kGroups; ++i) {
        double s = 0.0;
        for (int j = 0; j < kGroups; ++j) {
            if (!(n[j] > 0.0))
                throw InvalidState("group size n" + std::to_string(j + 1) + " must be positive");
            s += c(i, j) * infectious[j] / n[j];
        }
        lambda[i] = mix.a[i] * mix.beta[i] * s;
    }
    return lambda;
}

}  // namespace tbage
