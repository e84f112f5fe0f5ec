#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tbage/calibrate.hpp"
#include "tbage/cluster.hpp"
#include "tbage/errors.hpp"
#include "tbage/io.hpp"
#include "tbage/mixing.hpp"
#include "tbage/model.hpp"
#include "tbage/reproduction.hpp"
#include "tbage/scenarios.hpp"
#include "tbage/sensitivity.hpp"
#include "tbage/simulate.hpp"

namespace py = pybind11;
using namespace tbage;

namespace {

SizeMode parse_mode(const std::string& mode) {
    if (mode == "dfe") return SizeMode::dfe;
    if (mode == "initial") return SizeMode::initial;
    throw DomainError("size mode must be 'dfe' or 'initial', got '" + mode + "'");
}

}  // namespace

PYBIND11_MODULE(_tbage, m) {
    m.doc() = "Age-structured SEIR transmission model: simulation, calibration, analysis";

    py::register_exception<Error>(m, "Error");

    m.attr("DEFAULT_STEP") = kDefaultStep;
    m.attr("MAX_STEP") = kMaxStep;
    m.attr("DEFAULT_SEED") = py::int_(kDefaultSeed);
    m.attr("WHO_THRESHOLD") = kWhoThreshold;

    py::enum_<NMode>(m, "NMode")
        .value("varying", NMode::varying)
        .value("constant", NMode::constant);

    py::class_<MixingSpec>(m, "MixingSpec")
        .def(py::init<>())
        .def_readwrite("a", &MixingSpec::a)
        .def_readwrite("eps", &MixingSpec::eps)
        .def_readwrite("beta", &MixingSpec::beta)
        .def("validate", &MixingSpec::validate);

    py::class_<Params>(m, "Params")
        .def(py::init<>())
        .def_readwrite("A", &Params::A)
        .def_readwrite("rho", &Params::rho)
        .def_readwrite("omega", &Params::omega)
        .def_readwrite("mu", &Params::mu)
        .def_readwrite("theta", &Params::theta)
        .def_readwrite("sigma", &Params::sigma)
        .def_readwrite("gamma", &Params::gamma)
        .def_readwrite("d", &Params::d)
        .def_readwrite("mixing", &Params::mixing)
        .def_readwrite("n_mode", &Params::n_mode)
        .def_readwrite("n_fixed", &Params::n_fixed)
        .def("validate", &Params::validate);

    m.def("preset", &preset, py::arg("name"));
    m.def("initial_state", &initial_state);
    m.def("rhs", &rhs, py::arg("params"), py::arg("state"));
    m.def("hazard_sizes", &hazard_sizes, py::arg("params"), py::arg("state"));

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("times", &Trajectory::times)
        .def_readonly("clamp_count", &Trajectory::clamp_count)
        .def_property_readonly("states",
                               [](const Trajectory& tr) {
                                   Eigen::MatrixXd out(tr.states.size(), 12);
                                   for (size_t i = 0; i < tr.states.size(); ++i)
                                       out.row(i) = tr.states[i].transpose();
                                   return out;
                               })
        .def_property_readonly("case_flux", [](const Trajectory& tr) {
            Eigen::MatrixXd out(tr.case_flux.size(), 3);
            for (size_t i = 0; i < tr.case_flux.size(); ++i)
                out.row(i) = tr.case_flux[i].transpose();
            return out;
        });

    m.def("integrate", &integrate, py::arg("params"), py::arg("y0"), py::arg("t0"),
          py::arg("t1"), py::arg("dt") = kDefaultStep);

    py::class_<AnnualIncidence>(m, "AnnualIncidence")
        .def_readonly("year", &AnnualIncidence::year)
        .def_readonly("by_group", &AnnualIncidence::by_group)
        .def_readonly("total", &AnnualIncidence::total)
        .def("__repr__", [](const AnnualIncidence& a) {
            return "AnnualIncidence(year=" + std::to_string(a.year) +
                   ", total=" + std::to_string(a.total) + ")";
        });

    m.def("annual_new_cases", &annual_new_cases, py::arg("trajectory"));

    m.def("mixing_fractions", &mixing_fractions, py::arg("mixing"), py::arg("n"));
    m.def("contact_matrix", &contact_matrix, py::arg("mixing"), py::arg("fractions"));
    m.def("force_of_infection", &force_of_infection, py::arg("mixing"),
          py::arg("contacts"), py::arg("infectious"), py::arg("n"));

    py::class_<Dfe>(m, "Dfe")
        .def_readonly("S0", &Dfe::S0)
        .def_readonly("R0", &Dfe::R0)
        .def("n0", &Dfe::n0);

    py::class_<NextGen>(m, "NextGen")
        .def_readonly("F", &NextGen::F)
        .def_readonly("V", &NextGen::V)
        .def_readonly("Vinv", &NextGen::Vinv);

    m.def("disease_free_equilibrium", &disease_free_equilibrium, py::arg("params"));
    m.def(
        "next_gen_matrices",
        [](const Params& p, const std::string& mode) {
            return next_gen_matrices(p, parse_mode(mode));
        },
        py::arg("params"), py::arg("size_mode") = "dfe");
    m.def(
        "reproduction_number",
        [](const Params& p, const std::string& mode) {
            return reproduction_number(p, parse_mode(mode));
        },
        py::arg("params"), py::arg("size_mode") = "dfe");

    py::class_<CaseRow>(m, "CaseRow")
        .def_readonly("year", &CaseRow::year)
        .def_readonly("has_groups", &CaseRow::has_groups)
        .def_readonly("groups", &CaseRow::groups)
        .def_readonly("total", &CaseRow::total);

    m.def("load_case_series", &load_case_series, py::arg("path"));
    m.def("load_params", &load_params, py::arg("path"));

    py::class_<FitResult>(m, "FitResult")
        .def_readonly("params", &FitResult::params)
        .def_readonly("beta", &FitResult::beta)
        .def_readonly("omega", &FitResult::omega)
        .def_readonly("r2", &FitResult::r2)
        .def_readonly("r2_group", &FitResult::r2_group)
        .def_readonly("residuals", &FitResult::residuals)
        .def_readonly("iterations", &FitResult::iterations)
        .def_readonly("converged", &FitResult::converged);

    py::class_<HoldoutRow>(m, "HoldoutRow")
        .def_readonly("year", &HoldoutRow::year)
        .def_readonly("predicted", &HoldoutRow::predicted)
        .def_readonly("observed", &HoldoutRow::observed)
        .def_readonly("rel_err", &HoldoutRow::rel_err);

    m.def(
        "fit",
        [](const CaseSeries& data, const Params& base, double dt, long max_evals) {
            FitConfig cfg;
            cfg.dt = dt;
            cfg.nm.max_evals = max_evals;
            return fit(data, base, cfg);
        },
        py::arg("data"), py::arg("base"), py::arg("dt") = 1e-2,
        py::arg("max_evals") = 2000);
    m.def("r_squared", &r_squared, py::arg("predicted"), py::arg("observed"));
    m.def("holdout_check", &holdout_check, py::arg("fit_result"), py::arg("data"),
          py::arg("dt") = 1e-2);

    py::class_<ParamRanges>(m, "ParamRanges")
        .def_readwrite("names", &ParamRanges::names)
        .def_readwrite("lo", &ParamRanges::lo)
        .def_readwrite("hi", &ParamRanges::hi);

    py::class_<PrccRow>(m, "PrccRow")
        .def_readonly("name", &PrccRow::name)
        .def_readonly("coef", &PrccRow::coef);

    py::class_<PrccResult>(m, "PrccResult")
        .def_readonly("rows", &PrccResult::rows)
        .def_readonly("n", &PrccResult::n)
        .def_readonly("seed", &PrccResult::seed)
        .def_readonly("failures", &PrccResult::failures);

    m.def("default_ranges", &default_ranges, py::arg("base"), py::arg("rel") = 0.2);
    m.def("lhs_sample", &lhs_sample, py::arg("ranges"), py::arg("n"), py::arg("seed"));
    m.def("prcc", &prcc, py::arg("x"), py::arg("y"));
    m.def(
        "sensitivity_run",
        [](const Params& base, long n, std::uint64_t seed) {
            return sensitivity_run(base, n, seed);
        },
        py::arg("base"), py::arg("n") = 1000, py::arg("seed") = kDefaultSeed);

    py::class_<ClusterResult>(m, "ClusterResult")
        .def_readonly("labels", &ClusterResult::labels)
        .def_readonly("centroids", &ClusterResult::centroids)
        .def_readonly("sse", &ClusterResult::sse);

    m.def("kmeans_1d", &kmeans_1d, py::arg("values"), py::arg("k"),
          py::arg("seed") = kDefaultSeed, py::arg("restarts") = 50);

    py::class_<Override>(m, "Override")
        .def(py::init([](const std::string& key, double value, bool multiply) {
                 return Override{key, value, multiply};
             }),
             py::arg("key"), py::arg("value"), py::arg("multiply") = false)
        .def_readwrite("key", &Override::key)
        .def_readwrite("value", &Override::value)
        .def_readwrite("multiply", &Override::multiply);

    py::class_<ScenarioSpec>(m, "ScenarioSpec")
        .def(py::init<>())
        .def_readwrite("name", &ScenarioSpec::name)
        .def_readwrite("overrides", &ScenarioSpec::overrides)
        .def_readwrite("start_year", &ScenarioSpec::start_year)
        .def_readwrite("horizon", &ScenarioSpec::horizon)
        .def_readwrite("dt", &ScenarioSpec::dt);

    py::class_<Projection>(m, "Projection")
        .def_readonly("name", &Projection::name)
        .def_readonly("series", &Projection::series)
        .def_readonly("threshold", &Projection::threshold)
        .def_readonly("target_year", &Projection::target_year);

    py::class_<WhoAssessment>(m, "WhoAssessment")
        .def_readonly("threshold", &WhoAssessment::threshold)
        .def_readonly("year", &WhoAssessment::year)
        .def_readonly("met_by_2035", &WhoAssessment::met_by_2035);

    m.def("apply_scenario_overrides", &apply_scenario_overrides, py::arg("base"),
          py::arg("overrides"));
    m.def("run_scenario", &run_scenario, py::arg("base"), py::arg("spec"));
    m.def("scenario_sweep", &scenario_sweep, py::arg("base"), py::arg("key"),
          py::arg("values"), py::arg("multiply"), py::arg("start_year") = 2022,
          py::arg("horizon") = 2035, py::arg("dt") = kDefaultStep);
    m.def("who_target_assessment", &who_target_assessment, py::arg("projection"),
          py::arg("threshold") = kWhoThreshold);
}
