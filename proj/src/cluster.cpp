#include "tbage/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "tbage/errors.hpp"

namespace tbage {

namespace {

double uniform53(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

struct Run {
    std::vector<int> labels;
    std::vector<double> centers;
    double sse;
    bool ok;
};

Run lloyd_once(const std::vector<double>& v, int k, std::mt19937_64& rng) {
    const size_t n = v.size();
    std::vector<double> centers;
    centers.push_back(v[rng() % n]);
    std::vector<double> d2(n);
    while (static_cast<int>(centers.size()) < k) {
        double total = 0.0;
        for (size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (double c : centers) best = std::min(best, (v[i] - c) * (v[i] - c));
            d2[i] = best;
            total += best;
        }
        if (total > 0.0) {
            const double target = uniform53(rng) * total;
            double acc = 0.0;
            size_t pick = n - 1;
            for (size_t i = 0; i < n; ++i) {
                acc += d2[i];
                if (acc >= target) {
                    pick = i;
                    break;
                }
            }
            centers.push_back(v[pick]);
        } else {
            centers.push_back(v[rng() % n]);
        }
    }

    std::vector<int> labels(n, 0);
    for (int it = 0; it < 200; ++it) {
        bool changed = false;
        for (size_t i = 0; i < n; ++i) {
            int best = 0;
            double bd = std::numeric_limits<double>::infinity();
            for (int c = 0; c < k; ++c) {
                const double d = (v[i] - centers[c]) * (v[i] - centers[c]);
                if (d < bd) {
                    bd = d;
                    best = c;
                }
            }
            if (labels[i] != best) {
                labels[i] = best;
                changed = true;
            }
        }
        std::vector<double> sum(k, 0.0);
        std::vector<long> cnt(k, 0);
        for (size_t i = 0; i < n; ++i) {
            sum[labels[i]] += v[i];
            ++cnt[labels[i]];
        }
        for (int c = 0; c < k; ++c) {
            if (cnt[c] == 0) return {{}, {}, 0.0, false};
            centers[c] = sum[c] / cnt[c];
        }
        if (!changed && it > 0) break;
    }

    double sse = 0.0;
    for (size_t i = 0; i < n; ++i) sse += (v[i] - centers[labels[i]]) * (v[i] - centers[labels[i]]);
    return {labels, centers, sse, true};
}

}  // namespace

ClusterResult kmeans_1d(const std::vector<double>& values, int k, std::uint64_t seed,
                        int restarts) {
    const size_t n = values.size();
    if (k < 1) throw DomainError("k must be at least 1");
    if (n == 0 || static_cast<size_t>(k) > n)
        throw DomainError("need at least k values to cluster");
    for (double v : values)
        if (!std::isfinite(v)) throw DomainError("values must be finite");

    std::mt19937_64 rng(seed);
    Run best{{}, {}, std::numeric_limits<double>::infinity(), false};
    for (int r = 0; r < std::max(1, restarts); ++r) {
        const Run run = lloyd_once(values, k, rng);
        if (run.ok && run.sse < best.sse) best = run;
    }
    if (!best.ok)
        throw EmptyCluster("every restart left a cluster empty");

    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return best.centers[a] < best.centers[b]; });
    std::vector<int> relabel(k);
    for (int pos = 0; pos < k; ++pos) relabel[order[pos]] = pos;

    ClusterResult out;
    out.sse = best.sse;
    out.centroids.resize(k);
    for (int c = 0; c < k; ++c) out.centroids[relabel[c]] = best.centers[c];
    out.labels.reserve(n);
    for (size_t i = 0; i < n; ++i) out.labels.push_back(relabel[best.labels[i]]);
    return out;
}

}  // namespace tbage
