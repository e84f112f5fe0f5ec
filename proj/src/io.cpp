#include "tbage/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "tbage/errors.hpp"

namespace tbage {

std::string fmt_full(double v) {
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_sig(double v, int digits) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

namespace {

std::string strip(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(strip(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(strip(cur));
    return out;
}

double parse_number(const std::string& s, const std::string& where) {
    if (s.empty()) throw ParseError("empty numeric field in " + where);
    size_t used = 0;
    double v;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ParseError("bad number '" + s + "' in " + where);
    }
    if (used != s.size()) throw ParseError("bad number '" + s + "' in " + where);
    return v;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw ParseError("cannot open " + path + " for writing");
    return f;
}

}  // namespace

CaseSeries load_case_series(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open " + path);
    std::string line;
    if (!std::getline(f, line)) throw ParseError(path + " is empty");
    if (strip(line) != "year,g1,g2,g3,total")
        throw ParseError(path + ": header must be year,g1,g2,g3,total");

    CaseSeries out;
    int lineno = 1;
    while (std::getline(f, line)) {
        ++lineno;
        if (strip(line).empty()) continue;
        const std::string where = path + ":" + std::to_string(lineno);
        const auto cells = split_csv(line);
        if (cells.size() != 5) throw ParseError(where + ": expected 5 fields");

        CaseRow row;
        row.year = static_cast<int>(parse_number(cells[0], where));
        const int n_groups = static_cast<int>(!cells[1].empty()) +
                             static_cast<int>(!cells[2].empty()) +
                             static_cast<int>(!cells[3].empty());
        if (n_groups != 0 && n_groups != 3)
            throw ParseError(where + ": group columns must be all present or all empty");
        row.has_groups = n_groups == 3;
        if (row.has_groups)
            for (int g = 0; g < 3; ++g) row.groups[g] = parse_number(cells[1 + g], where);
        row.total = parse_number(cells[4], where);

        if (row.has_groups && std::abs(row.groups.sum() - row.total) > 1.0)
            throw ConsistencyError(where + ": group counts do not add up to the total");
        if (!out.empty() && row.year <= out.back().year)
            throw ParseError(where + ": years must be strictly increasing");
        out.push_back(row);
    }
    if (out.empty()) throw ParseError(path + " has no data rows");
    return out;
}

void write_case_series(const std::string& path, const CaseSeries& series) {
    auto f = open_out(path);
    f << "year,g1,g2,g3,total\n";
    for (const auto& r : series) {
        f << r.year << ',';
        if (r.has_groups)
            f << fmt_full(r.groups[0]) << ',' << fmt_full(r.groups[1]) << ','
              << fmt_full(r.groups[2]);
        else
            f << ",,";
        f << ',' << fmt_full(r.total) << '\n';
    }
}

namespace {

const std::vector<std::string>& param_keys() {
    static const std::vector<std::string> keys = {
        "A",      "rho",    "omega",  "mu1",    "mu2",    "mu3",    "theta1",
        "theta2", "sigma1", "sigma2", "sigma3", "gamma1", "gamma2", "gamma3",
        "d1",     "d2",     "d3",     "beta1",  "beta2",  "beta3",  "a1",
        "a2",     "a3",     "eps1",   "eps2",   "eps3"};
    return keys;
}

}  // namespace

Params load_params(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open " + path);

    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        std::string s = strip(line);
        const auto hash = s.find('#');
        if (hash != std::string::npos) s = strip(s.substr(0, hash));
        if (s.empty()) continue;
        const std::string where = path + ":" + std::to_string(lineno);
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ParseError(where + ": expected key = value");
        const std::string key = strip(s.substr(0, eq));
        const std::string val = strip(s.substr(eq + 1));
        if (key.empty() || val.empty()) throw ParseError(where + ": expected key = value");
        if (kv.count(key)) throw ParseError(where + ": duplicate key " + key);
        kv[key] = val;
    }

    const auto& keys = param_keys();
    auto known = [&](const std::string& k) {
        if (k == "preset" || k == "n_mode") return true;
        if (k.rfind("n_fixed", 0) == 0 && k.size() == 8 && k[7] >= '1' && k[7] <= '3')
            return true;
        return std::find(keys.begin(), keys.end(), k) != keys.end();
    };
    for (const auto& [k, v] : kv)
        if (!known(k)) throw UnknownKey(k);

    Params p;
    bool from_preset = false;
    if (auto it = kv.find("preset"); it != kv.end()) {
        p = preset(it->second);
        from_preset = true;
        kv.erase(it);
    }

    if (!from_preset) {
        for (const auto& k : keys)
            if (!kv.count(k)) throw MissingKey(k);
        if (!kv.count("n_mode")) throw MissingKey("n_mode");
        p.n_fixed = group_sizes(initial_state());
    }

    if (auto it = kv.find("n_mode"); it != kv.end()) {
        if (it->second == "varying")
            p.n_mode = NMode::varying;
        else if (it->second == "constant")
            p.n_mode = NMode::constant;
        else
            throw DomainError("n_mode must be varying or constant");
        kv.erase(it);
    }
    for (int g = 0; g < 3; ++g) {
        const std::string k = "n_fixed" + std::to_string(g + 1);
        if (auto it = kv.find(k); it != kv.end()) {
            p.n_fixed[g] = parse_number(it->second, path);
            kv.erase(it);
        }
    }
    std::vector<std::string> names;
    std::vector<double> values;
    for (const auto& [k, v] : kv) {
        names.push_back(k);
        values.push_back(parse_number(v, path));
    }
    p = apply_named(p, names, values);
    p.validate();
    return p;
}

void write_params(const std::string& path, const Params& p) {
    auto f = open_out(path);
    for (const auto& k : param_keys()) f << k << " = " << fmt_full(get_named(p, k)) << '\n';
    f << "n_mode = " << (p.n_mode == NMode::varying ? "varying" : "constant") << '\n';
    for (int g = 0; g < 3; ++g)
        f << "n_fixed" << g + 1 << " = " << fmt_full(p.n_fixed[g]) << '\n';
}

std::vector<IncidenceBin> load_incidence_table(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open " + path);
    std::string line;
    if (!std::getline(f, line)) throw ParseError(path + " is empty");
    if (strip(line) != "age_group,rate")
        throw ParseError(path + ": header must be age_group,rate");
    std::vector<IncidenceBin> out;
    int lineno = 1;
    while (std::getline(f, line)) {
        ++lineno;
        if (strip(line).empty()) continue;
        const auto cells = split_csv(line);
        const std::string where = path + ":" + std::to_string(lineno);
        if (cells.size() != 2) throw ParseError(where + ": expected 2 fields");
        if (cells[0].empty()) throw ParseError(where + ": empty age group");
        out.push_back({cells[0], parse_number(cells[1], where)});
    }
    if (out.empty()) throw ParseError(path + " has no data rows");
    return out;
}

void write_annual_csv(const std::string& path, const std::vector<AnnualIncidence>& rows) {
    auto f = open_out(path);
    f << "year,g1,g2,g3,total\n";
    for (const auto& r : rows)
        f << r.year << ',' << fmt_full(r.by_group[0]) << ',' << fmt_full(r.by_group[1]) << ','
          << fmt_full(r.by_group[2]) << ',' << fmt_full(r.total) << '\n';
}

void write_trajectory_csv(const std::string& path, const Trajectory& tr) {
    auto f = open_out(path);
    f << "t,s1,e1,i1,r1,s2,e2,i2,r2,s3,e3,i3,r3\n";
    for (size_t i = 0; i < tr.times.size(); ++i) {
        f << fmt_full(tr.times[i]);
        for (int c = 0; c < 12; ++c) f << ',' << fmt_full(tr.states[i][c]);
        f << '\n';
    }
}

void write_prcc_csv(const std::string& path, const PrccResult& res) {
    auto rows = res.rows;
    std::stable_sort(rows.begin(), rows.end(), [](const PrccRow& a, const PrccRow& b) {
        return std::abs(a.coef) > std::abs(b.coef);
    });
    auto f = open_out(path);
    f << "parameter,coefficient\n";
    for (const auto& r : rows) f << r.name << ',' << fmt_full(r.coef) << '\n';
}

}  // namespace tbage
