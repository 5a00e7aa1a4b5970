#include "frontforge/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "frontforge/errors.hpp"
#include "frontforge/kernels.hpp"

namespace frontforge::io {

namespace fs = std::filesystem;

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::BadConfig, "cannot write " + path.string());
    return out;
}

}  // namespace

void write_profile_csv(const fs::path& path, const Profile& w) {
    std::vector<double> avg(w.values.size());
    kernels::average(w.values, w.left_limit, w.right_limit, w.grid.k, w.grid.h, avg);
    std::ofstream out = open_out(path);
    out << "phi,W,AW\n";
    for (int i = 0; i < w.grid.n; ++i) {
        out << format_double(w.grid.phi(i)) << ',' << format_double(w.values[i]) << ','
            << format_double(avg[i]) << '\n';
    }
}

std::vector<CurveRow> curve_rows(const PotentialSpec& p, const ShockCurve& curve) {
    std::vector<CurveRow> rows;
    rows.reserve(curve.points.size());
    for (const auto& q : curve.points) {
        CurveRow row;
        row.r_minus = q[0];
        row.r_plus = q[1];
        row.j_residual = energy_residual(p, q[0], q[1]);
        if (q[0] == q[1]) {
            // Diagonal seed: speed from the sonic limit.
            const double curv = evaluate(p, q[0], 2);
            row.sigma_branch2 = curv >= 0.0 ? std::sqrt(curv) : 0.0;
            row.type = "Sonic";
        } else {
            const double jump_dphi = evaluate(p, q[1], 1) - evaluate(p, q[0], 1);
            const double speed_sq = jump_dphi / (q[1] - q[0]);
            if (speed_sq > 0.0) {
                row.sigma_branch2 = std::sqrt(speed_sq);
                try {
                    const ShockData s = complete_shock(p, q[0], q[1], 0.0, 2);
                    row.type = shock_type_name(classify(p, s));
                } catch (const Error&) {
                    row.type = "Complex";
                }
            } else {
                row.sigma_branch2 = 0.0;
                row.type = "NonHyperbolic";
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_curve_csv(const fs::path& path, const std::vector<CurveRow>& rows) {
    std::ofstream out = open_out(path);
    out << "r_minus,r_plus,J_residual,sigma_branch2,type\n";
    for (const CurveRow& r : rows) {
        out << format_double(r.r_minus) << ',' << format_double(r.r_plus) << ','
            << format_double(r.j_residual) << ',' << format_double(r.sigma_branch2) << ','
            << r.type << '\n';
    }
}

void write_snapshot_csv(const fs::path& path, const Snapshot& snap) {
    std::ofstream out = open_out(path);
    out << "alpha,r,v\n";
    for (std::size_t a = 0; a < snap.strains.size(); ++a) {
        out << a << ',' << format_double(snap.strains[a]) << ','
            << format_double(snap.velocities[a]) << '\n';
    }
}

Profile read_profile_csv(const fs::path& path, const Grid& grid) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::MissingArtifact, "cannot read " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::BadConfig, "empty profile file");
    Profile w;
    w.grid = grid;
    w.values.reserve(static_cast<std::size_t>(grid.n));
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        std::getline(row, cell, ',');  // phi (positional, not re-read)
        if (!std::getline(row, cell, ',')) {
            throw Error(ErrorCode::BadConfig, "malformed profile row: " + line);
        }
        w.values.push_back(std::stod(cell));
    }
    if (static_cast<int>(w.values.size()) != grid.n) {
        throw Error(ErrorCode::BadConfig, "profile length does not match the requested grid");
    }
    return w;
}

nlohmann::json to_json(const PotentialSpec& p) {
    nlohmann::json j;
    j["poly"] = p.poly;
    j["trig"] = nlohmann::json::array();
    for (const TrigTerm& t : p.trig) {
        j["trig"].push_back({{"amp", t.amplitude},
                             {"freq", t.frequency},
                             {"kind", t.kind == TrigKind::Cos ? "cos" : "sin"}});
    }
    j["shift"] = p.shift;
    return j;
}

PotentialSpec potential_from_json(const nlohmann::json& j) {
    PotentialSpec p;
    if (j.contains("poly")) p.poly = j.at("poly").get<std::vector<double>>();
    if (j.contains("trig")) {
        for (const auto& t : j.at("trig")) {
            TrigTerm term;
            term.amplitude = t.at("amp").get<double>();
            term.frequency = t.at("freq").get<double>();
            const std::string kind = t.at("kind").get<std::string>();
            if (kind == "cos") {
                term.kind = TrigKind::Cos;
            } else if (kind == "sin") {
                term.kind = TrigKind::Sin;
            } else {
                throw Error(ErrorCode::BadConfig, "trig kind must be 'cos' or 'sin'");
            }
            p.trig.push_back(term);
        }
    }
    if (j.contains("shift")) p.shift = j.at("shift").get<double>();
    if (p.poly.empty() && p.trig.empty()) {
        throw Error(ErrorCode::BadConfig, "potential has no terms");
    }
    return p;
}

nlohmann::json to_json(const ShockData& s) {
    return {{"r_minus", s.r_minus},
            {"r_plus", s.r_plus},
            {"v_minus", s.v_minus},
            {"v_plus", s.v_plus},
            {"sigma", s.sigma}};
}

namespace {

nlohmann::json condition_json(const ConditionResult& c) {
    return {{"status", c.passed ? "pass" : "fail"},
            {"worst_location", c.worst_location},
            {"worst_value", c.worst_value}};
}

}  // namespace

nlohmann::json to_json(const AssumptionReport& rep) {
    return {{"R", condition_json(rep.regularity)}, {"N", condition_json(rep.normalization)},
            {"C", condition_json(rep.convexity)},  {"E", condition_json(rep.energy)},
            {"S", condition_json(rep.supersonic)}, {"A", condition_json(rep.area)},
            {"sample_count", rep.sample_count},    {"all_passed", rep.all_passed()}};
}

nlohmann::json to_json(const SolverConfig& cfg) {
    return {{"lambda", cfg.lambda},
            {"tol", cfg.tol},
            {"max_iter", cfg.max_iter},
            {"pin_every", cfg.pin_every},
            {"diag_window", cfg.diag_window},
            {"stagnation_rel_change", cfg.stagnation_rel_change},
            {"plateau_band", cfg.plateau_band},
            {"plateau_stop_coverage", cfg.plateau_stop_coverage}};
}

nlohmann::json to_json(const DecayReport& rep) {
    return {{"tau_minus_pred", rep.tau_minus_pred}, {"tau_plus_pred", rep.tau_plus_pred},
            {"tau_minus_fit", rep.tau_minus_fit},   {"tau_plus_fit", rep.tau_plus_fit},
            {"band_lo", rep.band_lo},               {"band_hi", rep.band_hi},
            {"rel_error_minus", rep.rel_error_minus},
            {"rel_error_plus", rep.rel_error_plus}};
}

nlohmann::json to_json(const VerificationReport& rep) {
    nlohmann::json checks = nlohmann::json::array();
    for (const VerificationCheck& c : rep.checks) {
        checks.push_back(
            {{"name", c.name}, {"passed", c.passed}, {"value", c.value}, {"bound", c.bound}});
    }
    return {{"checks", checks}, {"decay", to_json(rep.decay)}, {"all_passed", rep.all_passed}};
}

void write_report(const fs::path& path, const nlohmann::json& report) {
    std::ofstream out = open_out(path);
    out << report.dump(2) << '\n';
}

namespace {

// profile.csv -> profile.dat (phi W), report.json -> residual.dat,
// curve*.csv -> curve*.dat.
bool plot_profile(const fs::path& dir) {
    const fs::path src = dir / "profile.csv";
    if (!fs::exists(src)) return false;
    std::ifstream in(src);
    std::ofstream out = open_out(dir / "profile.dat");
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        const auto c1 = line.find(',');
        if (c1 == std::string::npos) continue;
        const auto c2 = line.find(',', c1 + 1);
        out << line.substr(0, c1) << ' ' << line.substr(c1 + 1, c2 - c1 - 1) << '\n';
    }
    return true;
}

bool plot_residuals(const fs::path& dir) {
    const fs::path src = dir / "report.json";
    if (!fs::exists(src)) return false;
    std::ifstream in(src);
    nlohmann::json j;
    in >> j;
    if (!j.contains("residual_history")) return false;
    std::ofstream out = open_out(dir / "residual.dat");
    int it = 0;
    for (const auto& r : j["residual_history"]) {
        out << it++ << ' ' << format_double(r.get<double>()) << '\n';
    }
    return true;
}

bool plot_curves(const fs::path& dir) {
    bool any = false;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("curve", 0) != 0 || entry.path().extension() != ".csv") continue;
        std::ifstream in(entry.path());
        fs::path dst = entry.path();
        dst.replace_extension(".dat");
        std::ofstream out = open_out(dst);
        std::string line;
        std::getline(in, line);
        while (std::getline(in, line)) {
            const auto c1 = line.find(',');
            if (c1 == std::string::npos) continue;
            const auto c2 = line.find(',', c1 + 1);
            out << line.substr(0, c1) << ' ' << line.substr(c1 + 1, c2 - c1 - 1) << '\n';
        }
        any = true;
    }
    return any;
}

}  // namespace

void emit_plotdata(const fs::path& dir) {
    if (!fs::exists(dir)) {
        throw Error(ErrorCode::MissingArtifact, "no artifact directory " + dir.string());
    }
    bool any = false;
    any |= plot_profile(dir);
    any |= plot_residuals(dir);
    any |= plot_curves(dir);
    if (!any) {
        throw Error(ErrorCode::MissingArtifact, "no plottable artifacts in " + dir.string());
    }
}

}  // namespace frontforge::io
