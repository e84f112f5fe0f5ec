#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "tbage/model.hpp"

namespace testutil {

inline std::string data_dir() {
    if (const char* p = std::getenv("TBAGE_DATA")) return p;
    return "data";
}

inline std::string data_file(const std::string& name) {
    return (std::filesystem::path(data_dir()) / name).string();
}

inline std::string fresh_dir(const std::string& tag) {
    auto p = std::filesystem::temp_directory_path() / ("tbage_test_" + tag);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p.string();
}

inline std::string write_text(const std::string& dir, const std::string& name,
                              const std::string& content) {
    const auto path = (std::filesystem::path(dir) / name).string();
    std::ofstream f(path);
    f << content;
    return path;
}

inline std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

inline double runif(std::mt19937_64& rng, double lo, double hi) {
    return lo + ((rng() >> 11) * 0x1.0p-53) * (hi - lo);
}

// Random but structurally valid parameter set for property tests.
inline tbage::Params random_params(std::mt19937_64& rng) {
    tbage::Params p;
    p.A = runif(rng, 1e5, 5e7);
    p.rho = runif(rng, 0.5, 1.0);
    p.omega = runif(rng, 0.0, 1.0);
    for (int g = 0; g < 3; ++g) {
        p.mu[g] = runif(rng, 1e-4, 0.1);
        p.sigma[g] = runif(rng, 0.1, 10.0);
        p.gamma[g] = runif(rng, 0.01, 2.0);
        p.d[g] = runif(rng, 0.0, 0.1);
        p.mixing.a[g] = runif(rng, 100.0, 5000.0);
        p.mixing.eps[g] = runif(rng, 0.0, 0.95);
        p.mixing.beta[g] = runif(rng, 1e-6, 1e-3);
    }
    p.theta = tbage::Vec2(runif(rng, 1e-4, 0.5), runif(rng, 1e-4, 0.5));
    p.n_fixed = tbage::Vec3(runif(rng, 1e6, 1e9), runif(rng, 1e6, 1e9), runif(rng, 1e6, 1e9));
    return p;
}

inline tbage::State random_state(std::mt19937_64& rng) {
    tbage::State y;
    for (int i = 0; i < 12; ++i) y[i] = runif(rng, 1.0, 1e8);
    return y;
}

}  // namespace testutil
