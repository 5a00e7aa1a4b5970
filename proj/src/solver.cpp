#include "frontforge/solver.hpp"

#include <algorithm>
#include <cmath>

#include "frontforge/errors.hpp"
#include "frontforge/kernels.hpp"

namespace frontforge {

const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Converged: return "Converged";
        case Outcome::TravellingShift: return "TravellingShift";
        case Outcome::Plateau: return "Plateau";
        case Outcome::MaxIter: return "MaxIter";
    }
    return "?";
}

namespace {

void check_band(const Profile& w) {
    for (double v : w.values) {
        if (!(std::abs(v) <= 1.05)) {
            throw Error(ErrorCode::PotentialDomain, "profile values left the band [-1.05, 1.05]");
        }
    }
}

// Shared scratch-free implementation of T = average o force o average.
void apply_T_into(const NormalizedPotential& np, const Profile& w, std::vector<double>& inner,
                  std::vector<double>& mapped, Profile& out) {
    inner.resize(w.values.size());
    mapped.resize(w.values.size());
    kernels::average(w.values, w.left_limit, w.right_limit, w.grid.k, w.grid.h, inner);
    kernels::map(inner, mapped, [&np](double v) { return np.evaluate(v, 1); });
    out.grid = w.grid;
    out.left_limit = w.left_limit;
    out.right_limit = w.right_limit;
    out.values.resize(w.values.size());
    kernels::average(mapped, np.evaluate(w.left_limit, 1), np.evaluate(w.right_limit, 1), w.grid.k,
                     w.grid.h, out.values);
}

// Precomputed reference integrand of the action. Using the same discrete
// operators for the reference makes the reference profile's action exactly
// zero and keeps integer-shift differences exact.
struct ActionEvaluator {
    Grid grid;
    const NormalizedPotential* np;
    std::vector<double> reference;  // 0.5 wsh^2 - Phi(A wsh) at the nodes
    mutable std::vector<double> avg, integrand;

    ActionEvaluator(const NormalizedPotential& pot, const Grid& g) : grid(g), np(&pot) {
        const Profile wsh = shock_profile(g);
        avg.resize(wsh.values.size());
        kernels::average(wsh.values, -1.0, 1.0, g.k, g.h, avg);
        reference.resize(wsh.values.size());
        for (std::size_t i = 0; i < reference.size(); ++i) {
            reference[i] = 0.5 * wsh.values[i] * wsh.values[i] - pot.evaluate(avg[i], 0);
        }
        integrand.resize(reference.size());
    }

    double operator()(const Profile& w) const {
        kernels::average(w.values, w.left_limit, w.right_limit, grid.k, grid.h, avg);
        for (std::size_t i = 0; i < integrand.size(); ++i) {
            integrand[i] =
                0.5 * w.values[i] * w.values[i] - np->evaluate(avg[i], 0) - reference[i];
        }
        return kernels::trapezoid(integrand, grid.h);
    }
};

std::vector<int> plateau_counts(const Profile& w, std::span<const double> levels, double band) {
    std::vector<int> counts(levels.size(), 0);
    for (std::size_t q = 0; q < levels.size(); ++q) {
        int c = 0;
        for (double v : w.values) {
            if (std::abs(v - levels[q]) < band) ++c;
        }
        counts[q] = c;
    }
    return counts;
}

}  // namespace

Profile apply_T(const NormalizedPotential& np, const Profile& w) {
    check_band(w);
    std::vector<double> inner, mapped;
    Profile out;
    apply_T_into(np, w, inner, mapped, out);
    return out;
}

double residual(const NormalizedPotential& np, const Profile& w) {
    const Profile t = apply_T(np, w);
    return l2_distance(w, t);
}

double action(const NormalizedPotential& np, const Profile& w) {
    check_band(w);
    return ActionEvaluator(np, w.grid)(w);
}

double action_sharp(const NormalizedPotential& np, const Profile& w) {
    std::vector<double> integrand(w.values.size());
    for (std::size_t i = 0; i < w.values.size(); ++i) {
        integrand[i] = g_area(np, w.values[i]);
    }
    return kernels::trapezoid(integrand, w.grid.h);
}

Profile euler_step(const NormalizedPotential& np, const Profile& w, double lambda) {
    if (!(lambda > 0.0 && lambda <= 1.0)) {
        throw Error(ErrorCode::BadParams, "step size must lie in (0, 1]");
    }
    const Profile t = apply_T(np, w);
    Profile mix;
    mix.grid = w.grid;
    mix.left_limit = w.left_limit;
    mix.right_limit = w.right_limit;
    mix.values.resize(w.values.size());
    for (std::size_t i = 0; i < w.values.size(); ++i) {
        mix.values[i] = (1.0 - lambda) * w.values[i] + lambda * t.values[i];
    }
    return enforce_cone(mix).profile;
}

std::vector<double> interior_fixed_points(const NormalizedPotential& np) {
    std::vector<double> roots;
    constexpr int n = 4001;
    constexpr double margin = 1e-6;
    auto f = [&](double w) { return np.evaluate(w, 1) - w; };
    auto push = [&roots](double root) {
        if (roots.empty() || std::abs(roots.back() - root) > 1e-8) roots.push_back(root);
    };
    std::vector<double> ws(n), fs(n);
    for (int i = 0; i < n; ++i) {
        ws[static_cast<std::size_t>(i)] = -1.0 + margin + (2.0 - 2.0 * margin) * i / (n - 1);
        fs[static_cast<std::size_t>(i)] = f(ws[static_cast<std::size_t>(i)]);
    }
    for (int i = 0; i < n; ++i) {
        // A sample landing exactly on an isolated root: neighbours straddle.
        if (fs[static_cast<std::size_t>(i)] == 0.0 && i > 0 && i + 1 < n &&
            fs[static_cast<std::size_t>(i - 1)] * fs[static_cast<std::size_t>(i + 1)] < 0.0) {
            push(ws[static_cast<std::size_t>(i)]);
        }
        if (i + 1 < n && fs[static_cast<std::size_t>(i)] * fs[static_cast<std::size_t>(i + 1)] < 0.0) {
            double lo = ws[static_cast<std::size_t>(i)], hi = ws[static_cast<std::size_t>(i + 1)];
            double flo = fs[static_cast<std::size_t>(i)];
            while (hi - lo > 1e-12) {
                const double mid = 0.5 * (lo + hi);
                const double fm = f(mid);
                if (flo * fm <= 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            push(0.5 * (lo + hi));
        }
    }
    return roots;
}

namespace {

Diagnosis diagnose_with_levels(std::span<const IterationRecord> history,
                               std::span<const double> levels, const SolverConfig& cfg) {
    if (static_cast<int>(history.size()) < cfg.diag_window) {
        throw Error(ErrorCode::BadParams, "history shorter than the diagnosis window");
    }
    const std::size_t w0 = history.size() - static_cast<std::size_t>(cfg.diag_window);
    const IterationRecord& first = history[w0];
    const IterationRecord& last = history.back();

    Diagnosis d;
    if (last.residual <= cfg.tol) {
        d.outcome = Outcome::Converged;
        d.identified = true;
        return d;
    }

    // Travelling shift: stagnant residual carried by constant-sign pinning.
    const double rel_change =
        std::abs(last.residual - first.residual) / std::max(first.residual, 1e-300);
    if (rel_change < cfg.stagnation_rel_change) {
        long long net = last.total_shift - first.total_shift;
        bool constant_sign = net != 0;
        for (std::size_t j = w0; j < history.size() && constant_sign; ++j) {
            const int s = history[j].shift_applied;
            if (s != 0 && (s > 0) != (net > 0)) constant_sign = false;
        }
        if (constant_sign && std::llabs(net) >= 2) {
            d.outcome = Outcome::TravellingShift;
            d.identified = true;
            d.drift_rate = static_cast<double>(net) * 1.0 / cfg.diag_window;  // nodes per iteration
            return d;
        }
    }

    // Plateau: monotone growth of the node count near an interior fixed point.
    for (std::size_t q = 0; q < first.plateau_counts.size() && q < levels.size(); ++q) {
        bool monotone = true;
        for (std::size_t j = w0 + 1; j < history.size(); ++j) {
            if (history[j].plateau_counts[q] < history[j - 1].plateau_counts[q]) {
                monotone = false;
                break;
            }
        }
        const int net = last.plateau_counts[q] - first.plateau_counts[q];
        const int growth_needed = std::max(4, cfg.diag_window / 5);
        if (monotone && net >= growth_needed) {
            d.outcome = Outcome::Plateau;
            d.identified = true;
            d.plateau_index = static_cast<int>(q);
            d.plateau_value = levels[q];
            d.plateau_growth = static_cast<double>(net) / cfg.diag_window;  // nodes per iteration
            return d;
        }
    }

    d.outcome = Outcome::MaxIter;
    d.identified = false;
    return d;
}

}  // namespace

Diagnosis diagnose(std::span<const IterationRecord> history, const NormalizedPotential& np,
                   const SolverConfig& cfg) {
    const std::vector<double> levels = interior_fixed_points(np);
    return diagnose_with_levels(history, levels, cfg);
}

FrontResult solve_front(const NormalizedPotential& np, const Grid& grid, const SolverConfig& cfg,
                        const Profile* initial) {
    if (!(cfg.lambda > 0.0 && cfg.lambda <= 1.0)) {
        throw Error(ErrorCode::BadParams, "step size must lie in (0, 1]");
    }
    if (!(cfg.tol > 0.0)) throw Error(ErrorCode::BadParams, "tolerance must be positive");
    {
        const AssumptionReport rep = check_assumptions(np, 501);
        if (!rep.regularity.passed || !rep.normalization.passed || !rep.convexity.passed) {
            throw Error(ErrorCode::BadParams,
                        "potential must satisfy regularity, normalization and convexity");
        }
    }

    Profile w;
    if (initial != nullptr) {
        if (initial->grid.n != grid.n || initial->grid.k != grid.k) {
            throw Error(ErrorCode::BadParams, "initial profile does not match the requested grid");
        }
        w = enforce_cone(*initial).profile;
        w = pin(w).profile;
    } else {
        w = shock_profile(grid);
    }

    const ActionEvaluator action_of(np, grid);
    const std::vector<double> levels = interior_fixed_points(np);

    FrontResult res;
    res.history.reserve(static_cast<std::size_t>(std::min(cfg.max_iter, 100000)));

    std::vector<double> inner, mapped;
    Profile t;
    long long total_shift = 0;
    // Pinning is only an exact symmetry of the action under energy balance;
    // the recorded action removes the measured pin jumps so the history
    // tracks the dissipating trajectory itself.
    double pin_action_offset = 0.0;

    for (int it = 0; it < cfg.max_iter; ++it) {
        check_band(w);
        apply_T_into(np, w, inner, mapped, t);
        const double r = l2_distance(w, t);

        IterationRecord rec;
        rec.residual = r;
        rec.action = action_of(w) - pin_action_offset;
        rec.crossing_index = crossing_index(w);
        rec.total_shift = total_shift;
        rec.plateau_counts = plateau_counts(w, levels, cfg.plateau_band);
        res.history.push_back(std::move(rec));

        if (r <= cfg.tol) {
            res.outcome = Outcome::Converged;
            res.diagnosis.outcome = Outcome::Converged;
            res.diagnosis.identified = true;
            break;
        }

        // Euler step and cone projection.
        Profile next;
        next.grid = grid;
        next.left_limit = w.left_limit;
        next.right_limit = w.right_limit;
        next.values.resize(w.values.size());
        for (std::size_t i = 0; i < w.values.size(); ++i) {
            next.values[i] = (1.0 - cfg.lambda) * w.values[i] + cfg.lambda * t.values[i];
        }
        ConeResult coned = enforce_cone(next);
        res.max_cone_correction = std::max(res.max_cone_correction, coned.max_correction);
        next = std::move(coned.profile);

        if (cfg.pin_every > 0 && (it + 1) % cfg.pin_every == 0) {
            PinResult pinned = pin(next);
            if (pinned.shift != 0) {
                const double before = action_of(next);
                pin_action_offset += action_of(pinned.profile) - before;
            }
            next = std::move(pinned.profile);
            res.shifts.push_back(pinned.shift);
            res.history.back().shift_applied = pinned.shift;
            total_shift += pinned.shift;
        }
        w = std::move(next);

        if (static_cast<int>(res.history.size()) >= cfg.diag_window) {
            const Diagnosis d = diagnose_with_levels(res.history, levels, cfg);
            if (d.identified && d.outcome == Outcome::TravellingShift) {
                res.outcome = d.outcome;
                res.diagnosis = d;
                break;
            }
            if (d.identified && d.outcome == Outcome::Plateau) {
                const int count = res.history.back().plateau_counts[
                    static_cast<std::size_t>(d.plateau_index)];
                if (count >= cfg.plateau_stop_coverage * grid.n) {
                    res.outcome = d.outcome;
                    res.diagnosis = d;
                    break;
                }
            }
        }
    }

    if (res.outcome == Outcome::MaxIter &&
        static_cast<int>(res.history.size()) >= cfg.diag_window) {
        const Diagnosis d = diagnose_with_levels(res.history, levels, cfg);
        if (d.identified) {
            res.outcome = d.outcome;
            res.diagnosis = d;
        }
    }

    res.iterations = static_cast<int>(res.history.size());
    res.profile = std::move(w);
    apply_T_into(np, res.profile, inner, mapped, t);
    res.residual = l2_distance(res.profile, t);
    res.action = action_of(res.profile);
    res.action_sharp = action_sharp(np, res.profile);
    return res;
}

}  // namespace frontforge
