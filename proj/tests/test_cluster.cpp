#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "helpers.hpp"
#include "tbage/cluster.hpp"
#include "tbage/errors.hpp"
#include "tbage/io.hpp"

using namespace tbage;

namespace {

// Exact optimal 1-D clustering: contiguous-partition dynamic program over the
// sorted values. Serves as an independent floor for the heuristic's error.
double best_partition_sse(std::vector<double> v, int k) {
    std::sort(v.begin(), v.end());
    const int n = static_cast<int>(v.size());
    std::vector<double> pre(n + 1, 0.0), pre2(n + 1, 0.0);
    for (int i = 0; i < n; ++i) {
        pre[i + 1] = pre[i] + v[i];
        pre2[i + 1] = pre2[i] + v[i] * v[i];
    }
    auto seg = [&](int a, int b) {
        const double s = pre[b] - pre[a];
        const double s2 = pre2[b] - pre2[a];
        return s2 - s * s / (b - a);
    };
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> dp(k + 1, std::vector<double>(n + 1, inf));
    dp[0][0] = 0.0;
    for (int c = 1; c <= k; ++c)
        for (int b = c; b <= n; ++b)
            for (int a = c - 1; a < b; ++a)
                dp[c][b] = std::min(dp[c][b], dp[c - 1][a] + seg(a, b));
    return dp[k][n];
}

// First 17 bins; the open-ended oldest bin stays out of the banding analysis.
std::vector<double> bundled_rates() {
    const auto bins = load_incidence_table(testutil::data_file("age_incidence.csv"));
    std::vector<double> rates;
    for (const auto& b : bins) rates.push_back(b.rate);
    rates.resize(17);
    return rates;
}

}  // namespace

TEST_CASE("age incidence rates split into three clean bands") {
    const auto rates = bundled_rates();
    REQUIRE(rates.size() == 17);
    const ClusterResult res = kmeans_1d(rates, 3);
    REQUIRE(res.labels.size() == 17);
    REQUIRE(res.centroids.size() == 3);
    for (int i = 0; i <= 2; ++i) CHECK(res.labels[i] == 0);
    for (int i = 3; i <= 11; ++i) CHECK(res.labels[i] == 1);
    for (int i = 12; i <= 16; ++i) CHECK(res.labels[i] == 2);
    CHECK(res.centroids[0] < res.centroids[1]);
    CHECK(res.centroids[1] < res.centroids[2]);
    CHECK(res.centroids[0] == doctest::Approx(5.07407).epsilon(1e-4));
    CHECK(res.centroids[1] == doctest::Approx(76.0405).epsilon(1e-4));
    CHECK(res.centroids[2] == doctest::Approx(177.85).epsilon(1e-4));
    CHECK(res.sse == doctest::Approx(best_partition_sse(rates, 3)).epsilon(1e-9));
}

TEST_CASE("one cluster is the mean, n clusters are the points") {
    const std::vector<double> v{3.0, 9.0, 12.0, 20.0};
    const ClusterResult one = kmeans_1d(v, 1);
    CHECK(one.centroids[0] == doctest::Approx(11.0).epsilon(1e-12));
    double tss = 0.0;
    for (double x : v) tss += (x - 11.0) * (x - 11.0);
    CHECK(one.sse == doctest::Approx(tss).epsilon(1e-12));
    for (int lab : one.labels) CHECK(lab == 0);

    const ClusterResult all = kmeans_1d(v, 4);
    CHECK(all.sse == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(all.centroids == std::vector<double>{3.0, 9.0, 12.0, 20.0});
    CHECK(all.labels == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("well separated pairs land in order") {
    const ClusterResult res = kmeans_1d({1.0, 1.0, 2.0, 2.0}, 2);
    CHECK(res.labels == std::vector<int>{0, 0, 1, 1});
    CHECK(res.centroids == std::vector<double>{1.0, 2.0});
    CHECK(res.sse == 0.0);
}

TEST_CASE("identical values cannot form two clusters") {
    CHECK_THROWS_AS(kmeans_1d({5.0, 5.0, 5.0, 5.0}, 2), EmptyCluster);
}

TEST_CASE("cluster count must fit the data") {
    const std::vector<double> v{1.0, 2.0, 3.0};
    CHECK_THROWS_AS(kmeans_1d(v, 0), DomainError);
    CHECK_THROWS_AS(kmeans_1d(v, -1), DomainError);
    CHECK_THROWS_AS(kmeans_1d(v, 4), DomainError);
    CHECK_THROWS_AS(kmeans_1d({}, 1), DomainError);
    CHECK_THROWS_AS(kmeans_1d({1.0, std::nan(""), 2.0}, 2), DomainError);
}

TEST_CASE("restarted search matches the exact optimum") {
    const auto rates = bundled_rates();
    for (int k : {2, 3}) {
        const ClusterResult res = kmeans_1d(rates, k);
        CHECK(res.sse == doctest::Approx(best_partition_sse(rates, k)).epsilon(1e-9));
    }
    std::mt19937_64 rng(3344);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> v;
        for (int i = 0; i < 20; ++i) v.push_back(testutil::runif(rng, 0.0, 100.0));
        for (int k : {2, 3}) {
            const ClusterResult res = kmeans_1d(v, k, 1000 + trial);
            const double best = best_partition_sse(v, k);
            CHECK(res.sse <= best * (1.0 + 1e-9) + 1e-12);
            CHECK(res.sse >= best * (1.0 - 1e-9) - 1e-12);
        }
    }
}

TEST_CASE("labels partition the data consistently") {
    const auto rates = bundled_rates();
    const ClusterResult res = kmeans_1d(rates, 3);
    for (size_t i = 0; i < rates.size(); ++i) {
        const int lab = res.labels[i];
        for (size_t c = 0; c < res.centroids.size(); ++c) {
            const double own = std::abs(rates[i] - res.centroids[lab]);
            const double other = std::abs(rates[i] - res.centroids[c]);
            CHECK(own <= other + 1e-9);
        }
    }
    double sse = 0.0;
    for (size_t i = 0; i < rates.size(); ++i) {
        const double d = rates[i] - res.centroids[res.labels[i]];
        sse += d * d;
    }
    CHECK(sse == doctest::Approx(res.sse).epsilon(1e-12));
}

TEST_CASE("clustering is deterministic for a fixed seed") {
    const auto rates = bundled_rates();
    const ClusterResult a = kmeans_1d(rates, 3, 77, 10);
    const ClusterResult b = kmeans_1d(rates, 3, 77, 10);
    CHECK(a.labels == b.labels);
    CHECK(a.centroids == b.centroids);
    CHECK(a.sse == b.sse);
}
