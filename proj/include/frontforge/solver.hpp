#pragma once

#include <span>
#include <vector>

#include "frontforge/potential.hpp"
#include "frontforge/profile.hpp"

namespace frontforge {

struct SolverConfig {
    double lambda = 1.0;   // Euler step size in (0, 1]
    double tol = 1e-10;    // stopping tolerance on the L2 fixed-point residual
    int max_iter = 10000;
    int pin_every = 1;     // iterations between pinnings (0 disables pinning)
    int diag_window = 50;  // trailing history length inspected by diagnose()

    // Regime-diagnosis thresholds.
    double stagnation_rel_change = 1e-3;  // residual "stagnant" over the window
    double plateau_band = 0.05;           // |w - wbar| counted as plateau
    double plateau_stop_coverage = 0.45;  // stop once the plateau covers this node fraction
};

enum class Outcome { Converged, TravellingShift, Plateau, MaxIter };

const char* outcome_name(Outcome o);

struct IterationRecord {
    double residual = 0.0;
    double action = 0.0;
    int crossing_index = -1;
    long long total_shift = 0;
    int shift_applied = 0;
    std::vector<int> plateau_counts;  // one per interior fixed point of the force
};

struct Diagnosis {
    Outcome outcome = Outcome::MaxIter;
    bool identified = false;
    double drift_rate = 0.0;      // nodes per iteration carried by the pin shifts
    double plateau_value = 0.0;   // level the plateau forms at
    double plateau_growth = 0.0;  // nodes per iteration gained by the plateau
    int plateau_index = -1;       // which fixed point, -1 if none
};

struct FrontResult {
    Profile profile;
    double residual = 0.0;
    double action = 0.0;
    double action_sharp = 0.0;
    int iterations = 0;
    Outcome outcome = Outcome::MaxIter;
    Diagnosis diagnosis;
    std::vector<IterationRecord> history;
    std::vector<int> shifts;          // pin shift recorded at every pinning
    double max_cone_correction = 0.0;  // largest projection applied by any step
};

/// One application of the fixed-point map: average, pointwise rescaled
/// force, average. Preserves the monotone cone and the limits -1, +1.
/// Throws PotentialDomain when input values leave [-1.05, 1.05].
Profile apply_T(const NormalizedPotential& np, const Profile& w);

/// Trapezoid L2 norm of w - T[w] over [-M, M].
double residual(const NormalizedPotential& np, const Profile& w);

/// Action of the deviation from the discontinuous reference profile,
///   integral of [ w^2/2 - Phi(Aw) ] minus the same integrand of the
/// reference, evaluated with the same discrete operators so the reference
/// itself has action exactly zero.
double action(const NormalizedPotential& np, const Profile& w);

/// Pointwise comparison functional: trapezoid integral of g(w).
/// Requires values in [-1, 1].
double action_sharp(const NormalizedPotential& np, const Profile& w);

/// One explicit Euler step (1-lambda) w + lambda T[w], followed by the cone
/// projection. lambda = 1 is the pure fixed-point iteration.
Profile euler_step(const NormalizedPotential& np, const Profile& w, double lambda);

/// Interior solutions of Phi'(w) = w on (-1, 1); candidate plateau levels.
std::vector<double> interior_fixed_points(const NormalizedPotential& np);

/// Pattern match on the trailing diag_window records: Converged when the
/// last residual is below tol; TravellingShift when the residual stagnates
/// while the pin shifts carry a constant-sign drift; Plateau when the node
/// count near an interior fixed point grows monotonically. MaxIter (with
/// identified = false) when nothing matches.
Diagnosis diagnose(std::span<const IterationRecord> history, const NormalizedPotential& np,
                   const SolverConfig& cfg);

/// Euler iteration from the discontinuous reference profile (or from
/// `initial` when given), pinning every pin_every steps. Stops on
/// convergence, on a confirmed travelling-shift pattern, on a plateau that
/// has grown past plateau_stop_coverage, or at max_iter.
FrontResult solve_front(const NormalizedPotential& np, const Grid& grid, const SolverConfig& cfg,
                        const Profile* initial = nullptr);

}  // namespace frontforge
