#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "frontforge/errors.hpp"
#include "frontforge/io.hpp"
#include "frontforge/runner.hpp"

namespace {

struct CommonOptions {
    std::string config_path;
    frontforge::CliOverrides overrides;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->set_help_flag("--help", "print this help message");
    cmd->add_option("-c,--config", opts.config_path, "JSON configuration file");
    cmd->add_option("--out", opts.overrides.output_dir, "artifact output directory");
    cmd->add_option("--lambda", opts.overrides.lambda, "Euler step size in (0, 1]");
    cmd->add_option("--tol", opts.overrides.tol, "residual stopping tolerance");
    cmd->add_option("--h", opts.overrides.h, "grid spacing, must equal 1/(2k)");
    cmd->add_option("--M", opts.overrides.M, "grid half-width");
    cmd->add_option("--max-iter", opts.overrides.max_iter, "iteration cap");
    cmd->add_flag("--plot-data", opts.overrides.emit_plots,
                  "also write two-column .dat series next to the artifacts");
}

int dispatch(const std::string& command, const CommonOptions& opts) {
    nlohmann::json config = nlohmann::json::object();
    if (!opts.config_path.empty()) {
        std::ifstream in(opts.config_path);
        if (!in) {
            std::cerr << "error: cannot open config file " << opts.config_path << '\n';
            return frontforge::kExitValidation;
        }
        try {
            in >> config;
        } catch (const std::exception& e) {
            std::cerr << "error: config parse failure: " << e.what() << '\n';
            return frontforge::kExitValidation;
        }
    }
    try {
        const frontforge::RunConfig cfg =
            frontforge::parse_run_config(config, command, opts.overrides);
        return frontforge::run(cfg);
    } catch (const frontforge::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.is_validation() ? frontforge::kExitValidation : frontforge::kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return frontforge::kExitValidation;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"front-forge: travelling-front computation for nonlinear atom chains"};
    app.require_subcommand(1);

    const std::string names[] = {"check-potential", "shock-curve", "solve-front", "decay-rate",
                                 "simulate-chain"};
    const std::string descriptions[] = {
        "validate a potential against the admissibility conditions",
        "trace energy-balanced shock curves in the (r-, r+) plane",
        "compute a front profile by the action-minimizing iteration",
        "predicted exponential tail rates from the endpoint curvatures",
        "direct chain simulation for dynamical cross-validation",
    };

    CommonOptions opts[5];
    CLI::App* subs[5];
    for (int i = 0; i < 5; ++i) {
        subs[i] = app.add_subcommand(names[i], descriptions[i]);
        add_common(subs[i], opts[i]);
    }

    std::string plot_dir;
    CLI::App* plot = app.add_subcommand("plot-data", "emit plot-ready series from artifacts");
    plot->add_option("--from", plot_dir, "artifact directory")->required();

    CLI11_PARSE(app, argc, argv);

    if (plot->parsed()) {
        try {
            frontforge::io::emit_plotdata(plot_dir);
            return frontforge::kExitOk;
        } catch (const frontforge::Error& e) {
            std::cerr << "error: " << e.what() << '\n';
            return e.is_validation() ? frontforge::kExitValidation : frontforge::kExitNumerical;
        }
    }
    for (int i = 0; i < 5; ++i) {
        if (subs[i]->parsed()) return dispatch(names[i], opts[i]);
    }
    return frontforge::kExitValidation;
}
