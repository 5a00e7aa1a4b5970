#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "frontforge/potential.hpp"
#include "frontforge/solver.hpp"

namespace frontforge {

struct ShockConfig {
    double r_minus = -1.0;
    double r_plus = 1.0;
    double v_minus = 1.0;
    int branch = 2;
};

struct ChainRunConfig {
    int n_atoms = 2000;
    double dt = 0.01;
    double t_end = 10.0;
    double smoothing = 5.0;
    std::string mode = "front";  // "front" or "riemann"
    std::vector<double> snapshot_times;
};

struct CurveRunConfig {
    double step = 0.02;
    int max_points = 2000;
    double lo = -3.0;
    double hi = 3.0;
    int n_grid = 512;
    std::vector<double> seeds;  // explicit seeds override located turning points
};

struct RunConfig {
    std::string command;
    PotentialSpec potential;
    std::string builtin_name;  // empty when the potential was given explicitly
    std::vector<double> builtin_params;
    std::optional<ShockConfig> shock;
    double grid_h = 0.05;
    int grid_M = 40;
    SolverConfig solver;
    ChainRunConfig chain;
    CurveRunConfig curve;
    std::string initial_profile;  // optional CSV path seeding the iteration
    std::vector<double> decay_lambdas;
    std::string output_dir = "out";
    bool emit_plots = false;
};

/// Scalar overrides taken from the command line; they win over the file.
struct CliOverrides {
    std::optional<double> lambda;
    std::optional<double> tol;
    std::optional<double> h;
    std::optional<int> M;
    std::optional<int> max_iter;
    std::optional<std::string> output_dir;
    bool emit_plots = false;
};

/// Builds a validated RunConfig from a configuration object.
/// Throws Error(BadConfig/BadParams) on malformed input.
RunConfig parse_run_config(const nlohmann::json& j, const std::string& command,
                           const CliOverrides& overrides);

/// Exit codes: 0 success, 2 validation error, 3 solver non-convergence,
/// 4 numerical error.
enum ExitCode : int {
    kExitOk = 0,
    kExitValidation = 2,
    kExitNoConvergence = 3,
    kExitNumerical = 4,
};

/// Executes the configured workflow and writes its artifacts.
int run(const RunConfig& cfg);

}  // namespace frontforge
