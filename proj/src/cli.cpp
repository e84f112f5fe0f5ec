#include "tbage/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "tbage/calibrate.hpp"
#include "tbage/cluster.hpp"
#include "tbage/errors.hpp"
#include "tbage/io.hpp"
#include "tbage/reproduction.hpp"
#include "tbage/scenarios.hpp"
#include "tbage/sensitivity.hpp"

namespace tbage {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

Params resolve_config(const std::string& spec) {
    if (spec == "varying_n" || spec == "constant_n") return preset(spec);
    return load_params(spec);
}

std::string out_path(const std::string& dir, const std::string& name) {
    fs::create_directories(dir);
    return (fs::path(dir) / name).string();
}

void dump_json(const std::string& path, const json& j) {
    std::ofstream f(path);
    if (!f) throw ParseError("cannot open " + path + " for writing");
    f << j.dump(2) << '\n';
}

json matrix_json(const Eigen::Matrix<double, 6, 6>& m) {
    json rows = json::array();
    for (int i = 0; i < 6; ++i) {
        json row = json::array();
        for (int j = 0; j < 6; ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

std::vector<Override> parse_overrides(const std::vector<std::string>& sets,
                                      const std::vector<std::string>& muls) {
    std::vector<Override> out;
    auto parse_one = [](const std::string& s, bool multiply) {
        const auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == s.size())
            throw CLI::ValidationError("override", "expected key=value, got '" + s + "'");
        Override ov;
        ov.key = s.substr(0, eq);
        ov.multiply = multiply;
        try {
            size_t used = 0;
            ov.value = std::stod(s.substr(eq + 1), &used);
            if (used != s.size() - eq - 1) throw std::invalid_argument(s);
        } catch (const std::exception&) {
            throw CLI::ValidationError("override", "bad number in '" + s + "'");
        }
        return ov;
    };
    for (const auto& s : sets) out.push_back(parse_one(s, false));
    for (const auto& s : muls) out.push_back(parse_one(s, true));
    return out;
}

std::vector<double> parse_value_list(const std::string& s) {
    std::vector<double> out;
    std::string cur;
    std::stringstream ss(s);
    while (std::getline(ss, cur, ',')) {
        try {
            size_t used = 0;
            out.push_back(std::stod(cur, &used));
            if (used != cur.size()) throw std::invalid_argument(cur);
        } catch (const std::exception&) {
            throw CLI::ValidationError("--values", "bad number '" + cur + "'");
        }
    }
    if (out.empty()) throw CLI::ValidationError("--values", "empty list");
    return out;
}

json annual_json(const std::vector<AnnualIncidence>& rows) {
    json arr = json::array();
    for (const auto& r : rows)
        arr.push_back({{"year", r.year},
                       {"g1", r.by_group[0]},
                       {"g2", r.by_group[1]},
                       {"g3", r.by_group[2]},
                       {"total", r.total}});
    return arr;
}

double total_in(const std::vector<AnnualIncidence>& rows, int year) {
    for (const auto& r : rows)
        if (r.year == year) return r.total;
    return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"age-structured TB transmission toolkit"};
    app.require_subcommand(1);

    std::string config = "varying_n";
    std::string out_dir = ".";
    std::uint64_t seed = kDefaultSeed;
    auto add_common = [&](CLI::App* s) {
        s->add_option("--config", config, "preset name or parameter file")
            ->capture_default_str();
        s->add_option("--seed", seed, "RNG seed for sampled analyses")->capture_default_str();
        s->add_option("--out", out_dir, "output directory")->capture_default_str();
        return s;
    };

    auto* sim = add_common(
        app.add_subcommand("simulate", "integrate the model and report annual cases"));
    int sim_t1 = 2035;
    double sim_dt = kDefaultStep;
    bool sim_traj = false;
    sim->add_option("--t1", sim_t1, "last simulated year")->capture_default_str();
    sim->add_option("--dt", sim_dt, "step size in years")->capture_default_str();
    sim->add_flag("--trajectory", sim_traj, "also write the full state trajectory");

    auto* fit_cmd = add_common(app.add_subcommand("fit", "calibrate transmission parameters"));
    std::string fit_data = "data/case_series.csv";
    double fit_dt = 1e-2;
    long fit_evals = 2000;
    fit_cmd->add_option("--data", fit_data, "annual case counts CSV")->capture_default_str();
    fit_cmd->add_option("--dt", fit_dt, "step size during calibration")->capture_default_str();
    fit_cmd->add_option("--max-evals", fit_evals, "objective evaluations per stage")
        ->capture_default_str();

    auto* repro = add_common(app.add_subcommand("repro", "reproduction number and its matrices"));
    std::string repro_mode = "initial";
    repro->add_option("--size-mode", repro_mode, "population sizes: initial or dfe")
        ->check(CLI::IsMember({"initial", "dfe"}))
        ->capture_default_str();

    auto* prcc_cmd = add_common(app.add_subcommand("prcc", "sampled parameter sensitivity"));
    long prcc_n = 1000;
    prcc_cmd->add_option("--n", prcc_n, "number of samples")->capture_default_str();

    auto* scen = add_common(app.add_subcommand("scenario", "project cases under parameter changes"));
    std::string scen_name = "scenario";
    std::vector<std::string> scen_sets, scen_muls;
    int scen_start = 2022, scen_horizon = 2035;
    double scen_dt = kDefaultStep;
    scen->add_option("--name", scen_name, "label for the outputs")->capture_default_str();
    scen->add_option("--set", scen_sets, "override, key=value (repeatable)");
    scen->add_option("--mul", scen_muls, "multiplier, key=factor (repeatable)");
    scen->add_option("--start-year", scen_start, "first year the changes apply")
        ->capture_default_str();
    scen->add_option("--horizon", scen_horizon, "last projected year")->capture_default_str();
    scen->add_option("--dt", scen_dt, "step size in years")->capture_default_str();

    auto* sweep = add_common(app.add_subcommand("sweep", "repeat a scenario across values of one key"));
    std::string sweep_key, sweep_values;
    bool sweep_mul = false;
    int sweep_start = 2022, sweep_horizon = 2035;
    double sweep_dt = kDefaultStep;
    sweep->add_option("--key", sweep_key, "parameter to vary")->required();
    sweep->add_option("--values", sweep_values, "comma-separated values")->required();
    sweep->add_flag("--multiply", sweep_mul, "treat values as factors on the base value");
    sweep->add_option("--start-year", sweep_start, "first year the changes apply")
        ->capture_default_str();
    sweep->add_option("--horizon", sweep_horizon, "last projected year")->capture_default_str();
    sweep->add_option("--dt", sweep_dt, "step size in years")->capture_default_str();

    auto* who = add_common(app.add_subcommand("who", "date the incidence target is reached"));
    double who_threshold = kWhoThreshold;
    int who_horizon = 2100;
    double who_dt = kDefaultStep;
    who->add_option("--threshold", who_threshold, "annual cases defining the target")
        ->capture_default_str();
    who->add_option("--horizon", who_horizon, "last projected year")->capture_default_str();
    who->add_option("--dt", who_dt, "step size in years")->capture_default_str();

    auto* clus = add_common(app.add_subcommand("cluster", "group age bands by incidence rate"));
    std::string clus_table = "data/age_incidence.csv";
    int clus_k = 3, clus_bins = 17, clus_restarts = 50;
    clus->add_option("--table", clus_table, "age-band incidence CSV")->capture_default_str();
    clus->add_option("--k", clus_k, "number of clusters")->capture_default_str();
    clus->add_option("--bins", clus_bins, "leading bins to use, 0 for all")
        ->capture_default_str();
    clus->add_option("--restarts", clus_restarts, "seeding attempts")->capture_default_str();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);

        if (*sim) {
            const Params p = resolve_config(config);
            if (sim_t1 < 2006) throw DomainError("--t1 must be 2006 or later");
            const auto tr = integrate(p, initial_state(), 0.0, sim_t1 + 1 - 2005.0, sim_dt);
            const auto annual = annual_new_cases(tr);
            write_annual_csv(out_path(out_dir, "annual_cases.csv"), annual);
            if (sim_traj) write_trajectory_csv(out_path(out_dir, "trajectory.csv"), tr);
            std::cout << "years 2005-" << sim_t1 << "  final total "
                      << fmt_sig(annual.back().total) << "  clamped steps " << tr.clamp_count
                      << "\n";
        } else if (*fit_cmd) {
            const Params base = resolve_config(config);
            const auto data = load_case_series(fit_data);
            FitConfig cfg;
            cfg.dt = fit_dt;
            cfg.nm.max_evals = fit_evals;
            const auto fr = fit(data, base, cfg);

            json rep{{"beta", {fr.beta[0], fr.beta[1], fr.beta[2]}},
                     {"omega", fr.omega},
                     {"r2_total", fr.r2},
                     {"r2_groups", {fr.r2_group[0], fr.r2_group[1], fr.r2_group[2]}},
                     {"evaluations", fr.iterations},
                     {"converged", fr.converged}};
            try {
                json hold = json::array();
                for (const auto& h : holdout_check(fr, data, fit_dt))
                    hold.push_back({{"year", h.year},
                                    {"predicted", h.predicted},
                                    {"observed", h.observed},
                                    {"rel_err", h.rel_err}});
                rep["holdout"] = hold;
            } catch (const DataGap&) {
                rep["holdout"] = json::array();
            }
            dump_json(out_path(out_dir, "fit_report.json"), rep);

            std::ofstream res(out_path(out_dir, "residuals.csv"));
            res << "year,residual\n";
            for (size_t i = 0; i < fr.residuals.size(); ++i)
                res << 2005 + i << ',' << fmt_full(fr.residuals[i]) << '\n';

            std::cout << "beta " << fmt_sig(fr.beta[0]) << ' ' << fmt_sig(fr.beta[1]) << ' '
                      << fmt_sig(fr.beta[2]) << "  omega " << fmt_sig(fr.omega) << "  R2 "
                      << fmt_sig(fr.r2) << (fr.converged ? "" : "  (not converged)") << "\n";
        } else if (*repro) {
            const Params p = resolve_config(config);
            const SizeMode mode = repro_mode == "dfe" ? SizeMode::dfe : SizeMode::initial;
            const auto g = next_gen_matrices(p, mode);
            const double r_sel = reproduction_number(p, mode);
            const double r_init = reproduction_number(p, SizeMode::initial);
            const double r_dfe = reproduction_number(p, SizeMode::dfe);
            const auto q = disease_free_equilibrium(p);

            json rep{{"size_mode", repro_mode},
                     {"r", r_sel},
                     {"r_initial_sizes", r_init},
                     {"r_dfe_sizes", r_dfe},
                     {"dfe_s", {q.S0[0], q.S0[1], q.S0[2]}},
                     {"dfe_r", {q.R0[0], q.R0[1], q.R0[2]}},
                     {"F", matrix_json(g.F)},
                     {"V", matrix_json(g.V)},
                     {"V_inverse", matrix_json(g.Vinv)}};
            dump_json(out_path(out_dir, "reproduction.json"), rep);
            std::cout << "R = " << fmt_sig(r_sel) << "  (" << repro_mode
                      << " sizes; dfe " << fmt_sig(r_dfe) << ", initial " << fmt_sig(r_init)
                      << ")\n";
        } else if (*prcc_cmd) {
            const Params base = resolve_config(config);
            const auto res = sensitivity_run(base, prcc_n, seed);
            write_prcc_csv(out_path(out_dir, "prcc.csv"), res);
            auto rows = res.rows;
            std::stable_sort(rows.begin(), rows.end(), [](const PrccRow& a, const PrccRow& b) {
                return std::abs(a.coef) > std::abs(b.coef);
            });
            std::cout << "n " << res.n << "  seed " << res.seed << "  dropped "
                      << res.failures << "\n";
            for (size_t i = 0; i < rows.size() && i < 5; ++i)
                std::cout << "  " << rows[i].name << ' ' << fmt_sig(rows[i].coef) << "\n";
        } else if (*scen) {
            const Params base = resolve_config(config);
            ScenarioSpec spec;
            spec.name = scen_name;
            spec.overrides = parse_overrides(scen_sets, scen_muls);
            spec.start_year = scen_start;
            spec.horizon = scen_horizon;
            spec.dt = scen_dt;
            const auto proj = run_scenario(base, spec);

            write_annual_csv(out_path(out_dir, "scenario_annual.csv"), proj.series);
            json rep{{"name", proj.name},
                     {"start_year", spec.start_year},
                     {"horizon", spec.horizon},
                     {"threshold", proj.threshold},
                     {"total_2025", total_in(proj.series, 2025)},
                     {"total_2035", total_in(proj.series, 2035)},
                     {"target_year",
                      proj.target_year ? json(*proj.target_year) : json(nullptr)},
                     {"series", annual_json(proj.series)}};
            dump_json(out_path(out_dir, "scenario_summary.json"), rep);
            std::cout << proj.name << "  2025 " << fmt_sig(total_in(proj.series, 2025))
                      << "  2035 " << fmt_sig(total_in(proj.series, 2035)) << "  target ";
            if (proj.target_year)
                std::cout << *proj.target_year << "\n";
            else
                std::cout << "not reached\n";
        } else if (*sweep) {
            const Params base = resolve_config(config);
            const auto values = parse_value_list(sweep_values);
            const auto projs = scenario_sweep(base, sweep_key, values, sweep_mul, sweep_start,
                                              sweep_horizon, sweep_dt);

            std::ofstream f(out_path(out_dir, "sweep_annual.csv"));
            f << "year";
            for (const auto& pr : projs) f << ',' << pr.name;
            f << '\n';
            for (size_t i = 0; i < projs.front().series.size(); ++i) {
                f << projs.front().series[i].year;
                for (const auto& pr : projs) f << ',' << fmt_full(pr.series[i].total);
                f << '\n';
            }

            json rep = json::array();
            for (const auto& pr : projs)
                rep.push_back({{"name", pr.name},
                               {"total_2025", total_in(pr.series, 2025)},
                               {"total_2035", total_in(pr.series, 2035)},
                               {"target_year",
                                pr.target_year ? json(*pr.target_year) : json(nullptr)}});
            dump_json(out_path(out_dir, "sweep_summary.json"), rep);
            for (const auto& pr : projs)
                std::cout << pr.name << "  " << sweep_horizon << " total "
                          << fmt_sig(pr.series.back().total) << "\n";
        } else if (*who) {
            const Params base = resolve_config(config);
            ScenarioSpec spec;
            spec.name = "baseline";
            spec.horizon = who_horizon;
            spec.dt = who_dt;
            const auto proj = run_scenario(base, spec);
            const auto a = who_target_assessment(proj, who_threshold);

            json rep{{"threshold", a.threshold},
                     {"year", a.year ? json(*a.year) : json(nullptr)},
                     {"met_by_2035", a.met_by_2035}};
            dump_json(out_path(out_dir, "who_assessment.json"), rep);
            std::cout << "threshold " << fmt_sig(a.threshold) << "  reached ";
            if (a.year)
                std::cout << *a.year << "\n";
            else
                std::cout << "never (through " << who_horizon << ")\n";
        } else if (*clus) {
            const auto table = load_incidence_table(clus_table);
            auto bins = table;
            if (clus_bins > 0 && clus_bins < static_cast<int>(table.size()))
                bins.resize(clus_bins);
            std::vector<double> rates;
            for (const auto& b : bins) rates.push_back(b.rate);
            const auto res = kmeans_1d(rates, clus_k, seed, clus_restarts);

            std::ofstream f(out_path(out_dir, "age_clusters.csv"));
            f << "age_group,rate,cluster\n";
            for (size_t i = 0; i < bins.size(); ++i)
                f << bins[i].age_group << ',' << fmt_full(bins[i].rate) << ','
                  << res.labels[i] + 1 << '\n';
            std::cout << "k " << clus_k << "  sse " << fmt_sig(res.sse) << "  centroids";
            for (double c : res.centroids) std::cout << ' ' << fmt_sig(c);
            std::cout << "\n";
        }
        return 0;
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace tbage
