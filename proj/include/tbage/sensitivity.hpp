#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tbage/model.hpp"

namespace tbage {

// Default seed for sampled analyses; chosen once so published outputs are
// reproducible without flags.
constexpr std::uint64_t kDefaultSeed = 20260816;

struct ParamRanges {
    std::vector<std::string> names;
    std::vector<double> lo;
    std::vector<double> hi;
};

// +-rel ranges around the base values for the parameters the reproduction
// number actually responds to; eps capped at 0.95, omega at 1.
ParamRanges default_ranges(const Params& base, double rel = 0.2);

// Copy of base with the named scalar entries replaced.
Params apply_named(const Params& base, const std::vector<std::string>& names,
                   const std::vector<double>& values);

// Current value of one named scalar entry.
double get_named(const Params& p, const std::string& name);

// Stratified (Latin hypercube) draw: each column is a permutation of the n
// strata with one uniform point per stratum.
std::vector<std::vector<double>> lhs_sample(const ParamRanges& ranges, long n,
                                            std::uint64_t seed);

// Partial rank correlation of each input column with the output.
std::vector<double> prcc(const std::vector<std::vector<double>>& x,
                         const std::vector<double>& y);

struct PrccRow {
    std::string name;
    double coef;
};

struct PrccResult {
    std::vector<PrccRow> rows;  // in range order; callers sort as needed
    long n = 0;
    std::uint64_t seed = 0;
    long failures = 0;
};

// LHS over the ranges, reproduction number (2005 population sizes) as the
// output, PRCC per parameter. Rows whose parameter draw cannot be evaluated
// are dropped; more than 1% of them is an error.
PrccResult sensitivity_run(const Params& base, long n = 1000,
                           std::uint64_t seed = kDefaultSeed,
                           const ParamRanges* ranges = nullptr);

}  // namespace tbage
