#include "frontforge/runner.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "frontforge/analysis.hpp"
#include "frontforge/chain.hpp"
#include "frontforge/errors.hpp"
#include "frontforge/io.hpp"
#include "frontforge/psystem.hpp"

namespace frontforge {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

template <class T>
void read_if(const json& j, const char* key, T& dst) {
    if (j.contains(key)) dst = j.at(key).get<T>();
}

PotentialSpec parse_potential(const json& j, RunConfig& cfg) {
    if (!j.is_object()) throw Error(ErrorCode::BadConfig, "potential must be an object");
    if (j.contains("builtin")) {
        cfg.builtin_name = j.at("builtin").get<std::string>();
        if (j.contains("params")) cfg.builtin_params = j.at("params").get<std::vector<double>>();
        return builtin_spec(cfg.builtin_name, cfg.builtin_params);
    }
    return io::potential_from_json(j);
}

}  // namespace

RunConfig parse_run_config(const json& j, const std::string& command,
                           const CliOverrides& overrides) {
    RunConfig cfg;
    cfg.command = command;
    if (j.contains("command")) {
        const std::string file_cmd = j.at("command").get<std::string>();
        if (!command.empty() && file_cmd != command) {
            throw Error(ErrorCode::BadConfig, "config file requests command '" + file_cmd +
                                                  "' but '" + command + "' was invoked");
        }
        if (command.empty()) cfg.command = file_cmd;
    }
    if (cfg.command.empty()) throw Error(ErrorCode::BadConfig, "no command selected");

    if (j.contains("potential")) {
        cfg.potential = parse_potential(j.at("potential"), cfg);
    } else {
        throw Error(ErrorCode::BadConfig, "config requires a 'potential' section");
    }

    if (j.contains("shock")) {
        const json& s = j.at("shock");
        ShockConfig sc;
        read_if(s, "r_minus", sc.r_minus);
        read_if(s, "r_plus", sc.r_plus);
        read_if(s, "v_minus", sc.v_minus);
        read_if(s, "branch", sc.branch);
        if (sc.branch != 1 && sc.branch != 2) {
            throw Error(ErrorCode::BadConfig, "shock branch must be 1 or 2");
        }
        cfg.shock = sc;
    }

    if (j.contains("grid")) {
        read_if(j.at("grid"), "h", cfg.grid_h);
        read_if(j.at("grid"), "M", cfg.grid_M);
    }
    if (j.contains("solver")) {
        const json& s = j.at("solver");
        read_if(s, "lambda", cfg.solver.lambda);
        read_if(s, "tol", cfg.solver.tol);
        read_if(s, "max_iter", cfg.solver.max_iter);
        read_if(s, "pin_every", cfg.solver.pin_every);
        read_if(s, "diag_window", cfg.solver.diag_window);
        read_if(s, "stagnation_rel_change", cfg.solver.stagnation_rel_change);
        read_if(s, "plateau_band", cfg.solver.plateau_band);
        read_if(s, "plateau_stop_coverage", cfg.solver.plateau_stop_coverage);
    }
    if (j.contains("chain")) {
        const json& c = j.at("chain");
        read_if(c, "N", cfg.chain.n_atoms);
        read_if(c, "dt", cfg.chain.dt);
        read_if(c, "t_end", cfg.chain.t_end);
        read_if(c, "smoothing", cfg.chain.smoothing);
        read_if(c, "mode", cfg.chain.mode);
        read_if(c, "snapshot_times", cfg.chain.snapshot_times);
        if (cfg.chain.mode != "front" && cfg.chain.mode != "riemann") {
            throw Error(ErrorCode::BadConfig, "chain mode must be 'front' or 'riemann'");
        }
    }
    if (j.contains("curve")) {
        const json& c = j.at("curve");
        read_if(c, "step", cfg.curve.step);
        read_if(c, "max_points", cfg.curve.max_points);
        read_if(c, "lo", cfg.curve.lo);
        read_if(c, "hi", cfg.curve.hi);
        read_if(c, "n_grid", cfg.curve.n_grid);
        read_if(c, "seeds", cfg.curve.seeds);
    }
    read_if(j, "initial_profile", cfg.initial_profile);
    read_if(j, "decay_lambdas", cfg.decay_lambdas);
    read_if(j, "output_dir", cfg.output_dir);

    if (overrides.lambda) cfg.solver.lambda = *overrides.lambda;
    if (overrides.tol) cfg.solver.tol = *overrides.tol;
    if (overrides.h) cfg.grid_h = *overrides.h;
    if (overrides.M) cfg.grid_M = *overrides.M;
    if (overrides.max_iter) cfg.solver.max_iter = *overrides.max_iter;
    if (overrides.output_dir) cfg.output_dir = *overrides.output_dir;
    cfg.emit_plots = overrides.emit_plots;

    // Validate everything that does not require running the workflow.
    Grid::make(cfg.grid_h, cfg.grid_M);
    if (!(cfg.solver.lambda > 0.0 && cfg.solver.lambda <= 1.0)) {
        throw Error(ErrorCode::BadConfig, "solver lambda must lie in (0, 1]");
    }
    if (!(cfg.solver.tol > 0.0)) throw Error(ErrorCode::BadConfig, "solver tol must be positive");
    if (cfg.solver.max_iter < 1) throw Error(ErrorCode::BadConfig, "max_iter must be positive");
    if (cfg.chain.n_atoms < 100) throw Error(ErrorCode::BadConfig, "chain needs >= 100 atoms");
    if (!(cfg.chain.dt > 0.0)) throw Error(ErrorCode::BadConfig, "chain dt must be positive");
    if (!(cfg.curve.step > 0.0)) throw Error(ErrorCode::BadConfig, "curve step must be positive");
    return cfg;
}

namespace {

json resolved_config(const RunConfig& cfg) {
    json j;
    j["command"] = cfg.command;
    if (!cfg.builtin_name.empty()) {
        j["potential"] = {{"builtin", cfg.builtin_name}, {"params", cfg.builtin_params}};
        j["potential"]["resolved"] = io::to_json(cfg.potential);
    } else {
        j["potential"] = io::to_json(cfg.potential);
    }
    if (cfg.shock) {
        j["shock"] = {{"r_minus", cfg.shock->r_minus},
                      {"r_plus", cfg.shock->r_plus},
                      {"v_minus", cfg.shock->v_minus},
                      {"branch", cfg.shock->branch}};
    }
    j["grid"] = {{"h", cfg.grid_h}, {"M", cfg.grid_M}};
    j["solver"] = io::to_json(cfg.solver);
    j["chain"] = {{"N", cfg.chain.n_atoms},         {"dt", cfg.chain.dt},
                  {"t_end", cfg.chain.t_end},       {"smoothing", cfg.chain.smoothing},
                  {"mode", cfg.chain.mode},         {"snapshot_times", cfg.chain.snapshot_times}};
    j["curve"] = {{"step", cfg.curve.step}, {"max_points", cfg.curve.max_points},
                  {"lo", cfg.curve.lo},     {"hi", cfg.curve.hi},
                  {"n_grid", cfg.curve.n_grid}, {"seeds", cfg.curve.seeds}};
    if (!cfg.initial_profile.empty()) j["initial_profile"] = cfg.initial_profile;
    if (!cfg.decay_lambdas.empty()) j["decay_lambdas"] = cfg.decay_lambdas;
    j["output_dir"] = cfg.output_dir;
    return j;
}

ShockConfig effective_shock(const RunConfig& cfg) {
    // Rescaled builtins default to the unit states they were written in.
    return cfg.shock.value_or(ShockConfig{});
}

NormalizedPotential normalized_for(const RunConfig& cfg) {
    const ShockConfig sc = effective_shock(cfg);
    return build_normalized(cfg.potential, sc.r_minus, sc.r_plus);
}

int run_check_potential(const RunConfig& cfg, json& report) {
    const NormalizedPotential np = normalized_for(cfg);
    const AssumptionReport rep = check_assumptions(np, 2001);
    const ShockConfig sc = effective_shock(cfg);
    report["assumptions"] = io::to_json(rep);
    report["lambda_minus"] = np.lambda_minus;
    report["lambda_plus"] = np.lambda_plus;
    report["energy_residual"] = energy_residual(cfg.potential, sc.r_minus, sc.r_plus);
    return kExitOk;
}

int run_shock_curve(const RunConfig& cfg, json& report) {
    const std::vector<TurningPoint> tps =
        turning_points(cfg.potential, cfg.curve.lo, cfg.curve.hi, cfg.curve.n_grid);
    json tp_json = json::array();
    for (const TurningPoint& tp : tps) {
        tp_json.push_back({{"location", tp.location},
                           {"kind", tp.kind == TurningKind::ConvexConcave ? "convex_concave"
                                                                          : "concave_convex"}});
    }
    report["turning_points"] = tp_json;

    std::vector<double> seeds = cfg.curve.seeds;
    if (seeds.empty()) {
        for (const TurningPoint& tp : tps) seeds.push_back(tp.location);
    }
    TraceOptions opt;
    opt.step = cfg.curve.step;
    opt.max_points = cfg.curve.max_points;
    opt.lo = cfg.curve.lo;
    opt.hi = cfg.curve.hi;

    json curves = json::array();
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        const ShockCurve curve = trace_curve(cfg.potential, seeds[i], opt);
        const std::vector<io::CurveRow> rows = io::curve_rows(cfg.potential, curve);
        const std::string file = (i == 0) ? "curve.csv" : ("curve_" + std::to_string(i) + ".csv");
        io::write_curve_csv(fs::path(cfg.output_dir) / file, rows);
        curves.push_back({{"seed", curve.seed},
                          {"points", curve.points.size()},
                          {"truncated", curve.truncated},
                          {"file", file}});
    }
    report["curves"] = curves;
    return kExitOk;
}

int run_solve_front(const RunConfig& cfg, json& report) {
    const NormalizedPotential np = normalized_for(cfg);
    const Grid grid = Grid::make(cfg.grid_h, cfg.grid_M);
    Profile initial;
    const Profile* initial_ptr = nullptr;
    if (!cfg.initial_profile.empty()) {
        initial = io::read_profile_csv(cfg.initial_profile, grid);
        initial_ptr = &initial;
    }
    const FrontResult result = solve_front(np, grid, cfg.solver, initial_ptr);

    const ShockConfig sc = effective_shock(cfg);
    const ShockData shock =
        complete_shock(cfg.potential, sc.r_minus, sc.r_plus, sc.v_minus, sc.branch);
    const auto jumps = jump_residuals(cfg.potential, shock);

    report["outcome"] = outcome_name(result.outcome);
    report["residual"] = result.residual;
    report["action"] = result.action;
    report["action_sharp"] = result.action_sharp;
    report["iterations"] = result.iterations;
    report["lambda_minus"] = np.lambda_minus;
    report["lambda_plus"] = np.lambda_plus;
    report["shifts"] = result.shifts;
    report["shock"] = io::to_json(shock);
    report["jump_residuals"] = {{"mass", jumps[0]}, {"momentum", jumps[1]}, {"energy", jumps[2]}};

    json residual_history = json::array();
    json action_history = json::array();
    for (const IterationRecord& rec : result.history) {
        residual_history.push_back(rec.residual);
        action_history.push_back(rec.action);
    }
    report["residual_history"] = residual_history;
    report["action_history"] = action_history;

    report["tau_minus_fit"] = nullptr;
    report["tau_plus_fit"] = nullptr;
    if (result.outcome == Outcome::Converged) {
        const VerificationReport ver = verify_front(np, result);
        report["verification"] = io::to_json(ver);
        report["tau_minus_fit"] = ver.decay.tau_minus_fit;
        report["tau_plus_fit"] = ver.decay.tau_plus_fit;
        report["tau_minus_pred"] = ver.decay.tau_minus_pred;
        report["tau_plus_pred"] = ver.decay.tau_plus_pred;
    } else {
        report["diagnosis"] = {{"drift_rate", result.diagnosis.drift_rate},
                               {"plateau_value", result.diagnosis.plateau_value},
                               {"plateau_growth", result.diagnosis.plateau_growth}};
    }

    io::write_profile_csv(fs::path(cfg.output_dir) / "profile.csv", result.profile);
    return result.outcome == Outcome::MaxIter ? kExitNoConvergence : kExitOk;
}

int run_decay_rate(const RunConfig& cfg, json& report) {
    const NormalizedPotential np = normalized_for(cfg);
    report["lambda_minus"] = np.lambda_minus;
    report["lambda_plus"] = np.lambda_plus;
    report["tau_minus"] = decay_rate(np.lambda_minus);
    report["tau_plus"] = decay_rate(np.lambda_plus);
    json extra = json::array();
    for (double lambda : cfg.decay_lambdas) {
        extra.push_back({{"lambda", lambda}, {"tau", decay_rate(lambda)}});
    }
    if (!extra.empty()) report["rates"] = extra;
    return kExitOk;
}

std::vector<double> snapshot_times(const RunConfig& cfg) {
    if (!cfg.chain.snapshot_times.empty()) return cfg.chain.snapshot_times;
    const double t = cfg.chain.t_end;
    return {0.0, 0.25 * t, 0.5 * t, 0.75 * t, t};
}

int run_simulate_chain(const RunConfig& cfg, json& report) {
    const ShockConfig sc = effective_shock(cfg);
    const ShockData shock =
        complete_shock(cfg.potential, sc.r_minus, sc.r_plus, sc.v_minus, sc.branch);
    report["shock"] = io::to_json(shock);

    ChainState st;
    FrontWave fw;
    bool have_front = false;
    if (cfg.chain.mode == "front") {
        const NormalizedPotential np = normalized_for(cfg);
        const Grid grid = Grid::make(cfg.grid_h, cfg.grid_M);
        const FrontResult result = solve_front(np, grid, cfg.solver);
        if (result.outcome != Outcome::Converged) {
            report["outcome"] = outcome_name(result.outcome);
            return kExitNoConvergence;
        }
        fw = denormalize_front(np, result.profile, shock);
        st = init_front(fw, shock, cfg.chain.n_atoms);
        have_front = true;
    } else {
        st = init_riemann(shock, cfg.chain.n_atoms, cfg.chain.smoothing);
    }

    std::vector<Snapshot> snaps;
    const std::vector<double> times = snapshot_times(cfg);
    double now = 0.0;
    for (double t : times) {
        const int n_steps = static_cast<int>(std::llround((t - now) / cfg.chain.dt));
        if (n_steps > 0) step(st, cfg.potential, cfg.chain.dt, n_steps);
        now = st.time;
        snaps.push_back(take_snapshot(st));
        std::ostringstream name;
        name << "snapshot_t" << t << ".csv";
        io::write_snapshot_csv(fs::path(cfg.output_dir) / name.str(), snaps.back());
    }

    const double speed = measure_speed(snaps, shock.r_minus, shock.r_plus);
    const double speed_sq_target =
        (evaluate(cfg.potential, shock.r_plus, 1) - evaluate(cfg.potential, shock.r_minus, 1)) /
        (shock.r_plus - shock.r_minus);
    report["speed_fit"] = speed;
    report["speed_sq_residual"] = std::abs(speed * speed - speed_sq_target) / speed_sq_target;

    // Largest descent of the final strain profile around the transition.
    {
        const Snapshot& last = snaps.back();
        const double pos = transition_position(last.strains, shock.r_minus, shock.r_plus);
        const int lo = std::max(1, static_cast<int>(pos) - 30);
        const int hi = std::min(static_cast<int>(last.strains.size()), static_cast<int>(pos) + 30);
        double max_descent = 0.0;
        for (int a = lo; a < hi; ++a) {
            max_descent = std::max(
                max_descent, last.strains[static_cast<std::size_t>(a - 1)] -
                                 last.strains[static_cast<std::size_t>(a)]);
        }
        report["transition_max_descent"] = max_descent;
        report["transition_position"] = pos;
    }

    if (have_front) {
        const TWDeviation dev =
            tw_deviation(snaps, fw, shock.sigma, 0.5 * cfg.chain.n_atoms, cfg.potential);
        report["shape_error"] = dev.shape_error;
        report["energy_drift"] = dev.energy_drift;
        report["speed_rel_error"] = std::abs(dev.speed_fit - shock.sigma) / std::abs(shock.sigma);
    } else {
        double e0 = 0.0, drift = 0.0;
        for (std::size_t s = 0; s < snaps.size(); ++s) {
            double energy = 0.0;
            for (double v : snaps[s].velocities) energy += 0.5 * v * v;
            for (double r : snaps[s].strains) energy += evaluate(cfg.potential, r, 0);
            if (s == 0) {
                e0 = energy;
            } else {
                drift = std::max(drift, std::abs(energy - e0) / std::max(std::abs(e0), 1.0));
            }
        }
        report["energy_drift"] = drift;
    }
    return kExitOk;
}

}  // namespace

int run(const RunConfig& cfg) {
    try {
        fs::create_directories(cfg.output_dir);
        json report;
        report["command"] = cfg.command;
        report["config"] = resolved_config(cfg);

        int code;
        if (cfg.command == "check-potential") {
            code = run_check_potential(cfg, report);
        } else if (cfg.command == "shock-curve") {
            code = run_shock_curve(cfg, report);
        } else if (cfg.command == "solve-front") {
            code = run_solve_front(cfg, report);
        } else if (cfg.command == "decay-rate") {
            code = run_decay_rate(cfg, report);
        } else if (cfg.command == "simulate-chain") {
            code = run_simulate_chain(cfg, report);
        } else {
            throw Error(ErrorCode::BadConfig, "unknown command '" + cfg.command + "'");
        }

        io::write_report(fs::path(cfg.output_dir) / "report.json", report);
        if (cfg.emit_plots) io::emit_plotdata(cfg.output_dir);
        return code;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.is_validation() ? kExitValidation : kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
}

}  // namespace frontforge
