#pragma once

#include <Eigen/Dense>

namespace tbage {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Compartment vector, grouped as (S,E,I,R) per age group:
// [S1 E1 I1 R1 S2 E2 I2 R2 S3 E3 I3 R3]
using State = Eigen::Matrix<double, 12, 1>;

constexpr int kGroups = 3;

constexpr int iS(int g) { return 4 * g + 0; }
constexpr int iE(int g) { return 4 * g + 1; }
constexpr int iI(int g) { return 4 * g + 2; }
constexpr int iR(int g) { return 4 * g + 3; }

inline Vec3 group_sizes(const State& y) {
    Vec3 n;
    for (int g = 0; g < kGroups; ++g)
        n[g] = y[iS(g)] + y[iE(g)] + y[iI(g)] + y[iR(g)];
    return n;
}

}  // namespace tbage
