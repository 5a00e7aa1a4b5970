// Acceptance suite: runs every top-level criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exits nonzero on any failure.

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "frontforge/analysis.hpp"
#include "frontforge/chain.hpp"
#include "frontforge/kernels.hpp"
#include "frontforge/potential.hpp"
#include "frontforge/profile.hpp"
#include "frontforge/psystem.hpp"
#include "frontforge/solver.hpp"

using namespace frontforge;

namespace {

int failures = 0;

void criterion(int number, const std::string& name, const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] %02d %-28s %s\n", ok ? "PASS" : "FAIL", number, name.c_str(),
                detail.c_str());
    if (!ok) ++failures;
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), pattern, a, b, c);
    return buf;
}

Profile random_pinned_cone_profile(const Grid& g, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> width(1.0, g.M * 0.6);
    std::uniform_real_distribution<double> jitter(0.0, 1.0);
    const double span = width(rng);
    Profile p;
    p.grid = g;
    p.values.resize(static_cast<std::size_t>(g.n));
    std::vector<double> inc(static_cast<std::size_t>(g.n), 0.0);
    double total = 0.0;
    for (int i = 0; i < g.n; ++i) {
        if (std::abs(g.phi(i)) < span) {
            inc[static_cast<std::size_t>(i)] = jitter(rng);
            total += inc[static_cast<std::size_t>(i)];
        }
    }
    double acc = 0.0;
    for (int i = 0; i < g.n; ++i) {
        acc += inc[static_cast<std::size_t>(i)];
        p.values[static_cast<std::size_t>(i)] = -1.0 + 2.0 * acc / total;
    }
    return pin(p).profile;
}

struct Ex1Runs {
    NormalizedPotential np = builtin("cubic_force", std::vector<double>{0.4});
    FrontResult coarse;   // h = 0.1
    FrontResult baseline; // h = 0.05
    FrontResult fine;     // h = 0.025
};

const Ex1Runs& ex1() {
    static const Ex1Runs runs = [] {
        Ex1Runs r;
        SolverConfig cfg;
        cfg.tol = 1e-12;
        cfg.max_iter = 2000;
        r.coarse = solve_front(r.np, Grid::make(0.1, 40), cfg);
        r.baseline = solve_front(r.np, Grid::make(0.05, 40), cfg);
        r.fine = solve_front(r.np, Grid::make(0.025, 40), cfg);
        return r;
    }();
    return runs;
}

}  // namespace

int main() {
    criterion(1, "operator-identities", [](std::string& detail) {
        double worst_adj = 0.0, worst_aff = 0.0;
        for (double h : {0.05, 0.025}) {
            const Grid g = Grid::make(h, 40);
            std::mt19937 rng(1234);
            std::uniform_real_distribution<double> dist(-1.0, 1.0);
            for (int rep = 0; rep < 4; ++rep) {
                std::vector<double> u(static_cast<std::size_t>(g.n), 0.0);
                std::vector<double> v(static_cast<std::size_t>(g.n), 0.0);
                for (int i = 3 * g.k; i < g.n - 3 * g.k; ++i) {
                    u[static_cast<std::size_t>(i)] = dist(rng);
                    v[static_cast<std::size_t>(i)] = dist(rng);
                }
                std::vector<double> au(u.size()), av(v.size()), uh(u.size()), vh(v.size());
                kernels::average(u, 0.0, 0.0, g.k, g.h, au);
                kernels::average(v, 0.0, 0.0, g.k, g.h, av);
                for (std::size_t i = 0; i < u.size(); ++i) {
                    uh[i] = g.h * u[i];
                    vh[i] = g.h * v[i];
                }
                const double nu = std::sqrt(kernels::dot(uh, u));
                const double nv = std::sqrt(kernels::dot(vh, v));
                worst_adj = std::max(worst_adj, std::abs(kernels::dot(au, vh) -
                                                         kernels::dot(uh, av)) /
                                                    (nu * nv));
            }
            std::vector<double> aff(static_cast<std::size_t>(g.n));
            for (int i = 0; i < g.n; ++i) aff[static_cast<std::size_t>(i)] = g.phi(i);
            std::vector<double> out(aff.size());
            kernels::average(aff, aff.front(), aff.back(), g.k, g.h, out);
            for (int i = g.k; i < g.n - g.k; ++i) {
                worst_aff = std::max(worst_aff,
                                     std::abs(out[static_cast<std::size_t>(i)] - g.phi(i)));
            }
        }
        detail = fmt("self-adjointness %.2e, affine %.2e (tol 1e-12)", worst_adj, worst_aff);
        return worst_adj <= 1e-12 && worst_aff <= 1e-12;
    });

    criterion(2, "front-convergence", [](std::string& detail) {
        const NormalizedPotential np = builtin("cubic_force", std::vector<double>{0.4});
        SolverConfig cfg;
        cfg.tol = 1e-9;
        cfg.max_iter = 500;
        const FrontResult r = solve_front(np, Grid::make(0.05, 40), cfg);
        bool strict = true;
        for (int i = 1; i < r.profile.grid.n; ++i) {
            const double a = r.profile.values[static_cast<std::size_t>(i - 1)];
            const double b = r.profile.values[static_cast<std::size_t>(i)];
            if (b < a) strict = false;
            if (std::abs(a) < 1.0 - 1e-12 && std::abs(b) < 1.0 - 1e-12 && !(b > a)) strict = false;
        }
        bool monotone_action = true;
        for (std::size_t j = 1; j < r.history.size(); ++j) {
            if (r.history[j].action > r.history[j - 1].action + 1e-10) monotone_action = false;
        }
        detail = fmt("residual %.2e in %.0f iterations", r.residual,
                     static_cast<double>(r.iterations));
        return r.outcome == Outcome::Converged && r.residual <= 1e-9 && r.iterations <= 500 &&
               strict && monotone_action;
    });

    criterion(3, "tail-decay-rate", [](std::string& detail) {
        const double predicted = decay_rate(0.2);
        // independent bisection on the characteristic relation
        auto f = [](double tau) { return 0.4 * (std::cosh(tau) - 1.0) - tau * tau; };
        double lo = 3.0, hi = 6.0;
        for (int it = 0; it < 100; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (f(mid) > 0.0) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        const double oracle = 0.5 * (lo + hi);
        if (std::abs(predicted - oracle) > 1e-10) {
            detail = "characteristic root disagrees with the oracle";
            return false;
        }
        const double fit_05 = fit_tail(ex1().baseline.profile, Side::Right);
        const double fit_025 = fit_tail(ex1().fine.profile, Side::Right);
        const double rel_05 = std::abs(fit_05 - predicted) / predicted;
        const double rel_025 = std::abs(fit_025 - predicted) / predicted;
        detail = fmt("tau=%.4f, fit error %.4f%% (h=0.05), %.4f%% (h=0.025)", predicted,
                     100 * rel_05, 100 * rel_025);
        return rel_05 <= 0.10 && rel_025 <= 0.05;
    });

    criterion(4, "action-bounds", [](std::string& detail) {
        const double beta = 0.4;
        const NormalizedPotential np = builtin("cubic_force", std::vector<double>{beta});
        const Grid g = Grid::make(0.05, 40);
        // endpoint curvature of the signed area is 1 - 0.2 = 0.8; the
        // quadratic sandwich constants for this family are [0.8/8, 0.8/2]
        const double curv = 1.0 - np.lambda_plus;
        const double c_lo = curv / 8.0;
        const double c_hi = curv / 2.0;
        double worst_gap = 0.0;
        bool sandwich = true;
        for (unsigned seed = 0; seed < 100; ++seed) {
            const Profile w = random_pinned_cone_profile(g, 5000 + seed);
            const double act = action(np, w);
            const double sharp = action_sharp(np, w);
            worst_gap = std::max(worst_gap, std::abs(act - sharp));
            const double dev_sq = l2_deviation(w) * l2_deviation(w);
            if (sharp < c_lo * dev_sq - 1e-10 || sharp > c_hi * dev_sq + 1e-10) sandwich = false;
        }
        detail = fmt("max |L - L#| = %.3f (bound %.3f), sandwich [%.2f, %.2f]", worst_gap,
                     4.0 + 10.0 * g.h, c_lo);
        detail += sandwich ? " held" : " violated";
        return worst_gap <= 4.0 + 10.0 * g.h && sandwich;
    });

    criterion(5, "reference-is-local-max", [](std::string& detail) {
        const NormalizedPotential np = builtin("cubic_force", std::vector<double>{0.4});
        const Grid g = Grid::make(0.05, 40);
        const Profile wsh = shock_profile(g);
        const Profile twsh = apply_T(np, wsh);
        double q1 = 0.0, q2 = 0.0;
        for (double* q : {&q1, &q2}) {
            const double eps = (q == &q1) ? 1e-2 : 1e-3;
            Profile probe;
            probe.grid = g;
            probe.values.resize(static_cast<std::size_t>(g.n));
            for (std::size_t i = 0; i < probe.values.size(); ++i) {
                probe.values[i] = (1.0 - eps) * wsh.values[i] + eps * twsh.values[i];
            }
            *q = action(np, probe) / eps;
        }
        detail = fmt("directional quotients %.4f (1e-2), %.4f (1e-3)", q1, q2);
        return q1 < 0.0 && q2 < 0.0;
    });

    criterion(6, "drifting-wave-regime", [](std::string& detail) {
        const NormalizedPotential np = builtin("tilted", std::vector<double>{0.4, 0.1});
        SolverConfig cfg;
        const FrontResult r = solve_front(np, Grid::make(0.05, 40), cfg);
        bool constant_sign = !r.shifts.empty();
        const std::size_t w0 =
            r.history.size() - static_cast<std::size_t>(cfg.diag_window);
        long long net = 0;
        for (std::size_t j = w0; j < r.history.size(); ++j) {
            const int s = r.history[j].shift_applied;
            net += s;
            if (s < 0) constant_sign = false;
        }
        bool strictly_decreasing = true;
        for (std::size_t j = 1; j < r.history.size(); ++j) {
            if (!(r.history[j].action < r.history[j - 1].action)) strictly_decreasing = false;
        }
        double min_res = 1e300;
        for (const IterationRecord& rec : r.history) min_res = std::min(min_res, rec.residual);
        detail = fmt("net window shift %.0f nodes, min residual %.2e",
                     static_cast<double>(net), min_res);
        return r.outcome == Outcome::TravellingShift && constant_sign && net > 0 &&
               strictly_decreasing && min_res > 1e-6;
    });

    criterion(7, "spreading-plateau-regime", [](std::string& detail) {
        const NormalizedPotential np = builtin("concave_convex", std::vector<double>{0.4});
        SolverConfig cfg;
        const FrontResult r = solve_front(np, Grid::make(0.05, 150), cfg);
        if (r.outcome != Outcome::Plateau) {
            detail = std::string("outcome ") + outcome_name(r.outcome);
            return false;
        }
        bool growing = true;
        const std::size_t q = static_cast<std::size_t>(r.diagnosis.plateau_index);
        for (std::size_t j = r.history.size() - 50; j < r.history.size(); ++j) {
            if (r.history[j].plateau_counts[q] < r.history[j - 1].plateau_counts[q]) {
                growing = false;
            }
        }
        const double final_action = r.history.back().action;
        detail = fmt("plateau at %.4f, final action %.2f", r.diagnosis.plateau_value,
                     final_action);
        return std::abs(r.diagnosis.plateau_value - 0.0) <= 0.02 && growing &&
               final_action < -10.0;
    });

    criterion(8, "shock-curves", [](std::string& detail) {
        const PotentialSpec cubic = builtin_spec("cubic_force", std::vector<double>{0.4});
        TraceOptions opt;
        opt.step = 0.02;
        opt.max_points = 200;
        opt.lo = -1.2;
        opt.hi = 1.2;
        const ShockCurve anti = trace_curve(cubic, 0.0, opt);
        double worst_sym = 0.0, worst_j = 0.0;
        bool supersonic = true;
        for (const auto& p : anti.points) {
            worst_sym = std::max(worst_sym, std::abs(p[0] + p[1]));
            worst_j = std::max(worst_j, std::abs(energy_residual(cubic, p[0], p[1])));
            const double a = 0.5 * (p[1] - p[0]);
            if (a >= 0.01 && a <= 1.0) {
                const ShockData s = complete_shock(cubic, p[0], p[1], 0.0, 2);
                if (classify(cubic, s) != ShockType::Supersonic) supersonic = false;
            }
        }

        const PotentialSpec fig = builtin_spec("figure2", {});
        const auto tps = turning_points(fig, -1.0, 3.0, 512);
        TraceOptions fopt;
        fopt.step = 0.02;
        fopt.max_points = 400;
        fopt.lo = -1.5;
        fopt.hi = 3.5;
        double worst_fig = 0.0;
        std::size_t fig_points = 0;
        for (const TurningPoint& tp : tps) {
            const ShockCurve c = trace_curve(fig, tp.location, fopt);
            fig_points += c.points.size();
            for (const auto& p : c.points) {
                worst_fig = std::max(worst_fig, std::abs(energy_residual(fig, p[0], p[1])));
            }
        }
        detail = fmt("|J| <= %.1e (mixed, %.0f pts), antidiagonal %.1e", std::max(worst_fig, 1e-300),
                     static_cast<double>(fig_points), worst_sym);
        return worst_sym <= 1e-8 && worst_j <= 1e-10 && supersonic && fig_points > 100 &&
               worst_fig <= 1e-10;
    });

    criterion(9, "jump-conditions", [](std::string& detail) {
        const PotentialSpec cubic = builtin_spec("cubic_force", std::vector<double>{0.4});
        double worst = 0.0;
        for (const FrontResult* r : {&ex1().baseline, &ex1().fine}) {
            if (r->outcome != Outcome::Converged) {
                detail = "front run did not converge";
                return false;
            }
            const ShockData s = complete_shock(cubic, -1.0, 1.0, 1.0, 2);
            for (double res : jump_residuals(cubic, s)) worst = std::max(worst, std::abs(res));
        }
        detail = fmt("max residual %.2e (tol 1e-9)", worst);
        return worst <= 1e-9;
    });

    criterion(10, "chain-validation", [](std::string& detail) {
        const PotentialSpec spec = builtin_spec("cubic_force", std::vector<double>{0.4});
        const ShockData s = complete_shock(spec, -1.0, 1.0, 1.0, 2);
        const FrontWave fw = denormalize_front(ex1().np, ex1().baseline.profile, s);

        const int n = 2000;
        ChainState st = init_front(fw, s, n);
        std::vector<Snapshot> snaps;
        snaps.push_back(take_snapshot(st));
        for (int leg = 0; leg < 4; ++leg) {
            step(st, spec, 0.01, 250);
            snaps.push_back(take_snapshot(st));
        }
        const TWDeviation dev = tw_deviation(snaps, fw, s.sigma, 0.5 * n, spec);

        ChainState rst = init_riemann(s, n, 10.0);
        std::vector<Snapshot> rsnaps;
        for (int leg = 0; leg < 10; ++leg) {
            step(rst, spec, 0.01, 100);
            if (rst.time > 4.9) rsnaps.push_back(take_snapshot(rst));
        }
        const double rspeed = measure_speed(rsnaps, s.r_minus, s.r_plus);
        const auto strains = rst.strains();
        const double pos = transition_position(strains, s.r_minus, s.r_plus);
        int c = static_cast<int>(pos);
        int lo = c, hi = c;
        while (lo > 1 && strains[static_cast<std::size_t>(lo - 1)] <=
                             strains[static_cast<std::size_t>(lo)]) {
            --lo;
        }
        while (hi + 1 < static_cast<int>(strains.size()) &&
               strains[static_cast<std::size_t>(hi + 1)] >=
                   strains[static_cast<std::size_t>(hi)]) {
            ++hi;
        }
        const double span = (strains[static_cast<std::size_t>(hi)] -
                             strains[static_cast<std::size_t>(lo)]) /
                            (s.r_plus - s.r_minus);
        detail = fmt("shape %.1e, drift %.1e, monotone span %.0f%%", dev.shape_error,
                     dev.energy_drift, 100 * span);
        return dev.shape_error <= 1e-2 && std::abs(dev.speed_fit - 1.0) <= 0.01 &&
               dev.energy_drift <= 1e-5 && std::abs(rspeed * rspeed - 1.0) <= 0.02 &&
               span >= 0.9;
    });

    criterion(11, "grid-convergence", [](std::string& detail) {
        auto supdiff = [](const Profile& coarse, const Profile& fine) {
            const int stride = fine.grid.k / coarse.grid.k;
            double worst = 0.0;
            for (int i = 0; i < coarse.grid.n; ++i) {
                worst = std::max(worst,
                                 std::abs(coarse.values[static_cast<std::size_t>(i)] -
                                          fine.values[static_cast<std::size_t>(i * stride)]));
            }
            return worst;
        };
        const double d1 = supdiff(ex1().coarse.profile, ex1().baseline.profile);
        const double d2 = supdiff(ex1().baseline.profile, ex1().fine.profile);
        const double order = std::log2(d1 / d2);
        detail = fmt("differences %.2e -> %.2e, fitted order %.2f", d1, d2, order);
        return order >= 1.8 && d1 <= 0.01;
    });

    std::printf("%d of 11 criteria passed\n", 11 - failures);
    return failures == 0 ? 0 : 1;
}
