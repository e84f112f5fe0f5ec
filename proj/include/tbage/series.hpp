#pragma once

#include <vector>

#include "tbage/types.hpp"

namespace tbage {

// One row of reported annual case counts. Years without a group breakdown
// carry only the total.
struct CaseRow {
    int year = 0;
    bool has_groups = false;
    Vec3 groups = Vec3::Zero();
    double total = 0.0;
};

using CaseSeries = std::vector<CaseRow>;

}  // namespace tbage
