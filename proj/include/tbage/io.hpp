#pragma once

#include <string>
#include <vector>

#include "tbage/model.hpp"
#include "tbage/sensitivity.hpp"
#include "tbage/series.hpp"
#include "tbage/simulate.hpp"

namespace tbage {

// Annual counts CSV with header year,g1,g2,g3,total. Group cells may be
// empty; when present they must add up to the total within one case.
CaseSeries load_case_series(const std::string& path);
void write_case_series(const std::string& path, const CaseSeries& series);

// Flat key = value parameter file. A `preset` line supplies defaults for
// everything it does not name; without one, every parameter is required.
Params load_params(const std::string& path);
void write_params(const std::string& path, const Params& p);

// Age-band incidence table: header age_group,rate.
struct IncidenceBin {
    std::string age_group;
    double rate;
};
std::vector<IncidenceBin> load_incidence_table(const std::string& path);

void write_annual_csv(const std::string& path, const std::vector<AnnualIncidence>& rows);
void write_trajectory_csv(const std::string& path, const Trajectory& tr);
void write_prcc_csv(const std::string& path, const PrccResult& res);

// Shortest round-trippable decimal form.
std::string fmt_full(double v);
// Fixed number of significant digits, for console summaries.
std::string fmt_sig(double v, int digits = 6);

}  // namespace tbage
