#pragma once

#include <cstdint>
#include <vector>

#include "tbage/sensitivity.hpp"

namespace tbage {

struct ClusterResult {
    std::vector<int> labels;        // 0-based, ordered by ascending centroid
    std::vector<double> centroids;  // ascending
    double sse = 0.0;
};

// One-dimensional k-means with distance-weighted seeding and restarts; the
// best run by total squared error wins. Labels are renumbered so cluster 0
// has the smallest centroid.
ClusterResult kmeans_1d(const std::vector<double>& values, int k,
                        std::uint64_t seed = kDefaultSeed, int restarts = 50);

}  // namespace tbage
