#pragma once

#include <string>
#include <vector>

#include "frontforge/potential.hpp"
#include "frontforge/profile.hpp"
#include "frontforge/solver.hpp"

namespace frontforge {

/// Unique positive root of tau^2 = 2*lambda*(cosh(tau) - 1), the exponential
/// rate at which a monotone tail approaches its limit when the endpoint
/// curvature is lambda. Throws NonPositive for lambda <= 0 and Sonic for
/// lambda >= 1 - 1e-12 (the root merges with the double root at zero).
double decay_rate(double lambda);

enum class Side { Left, Right };

struct TailFitOptions {
    double band_lo = 1e-8;  // deviations below sit in discretization noise
    double band_hi = 1e-2;  // deviations above belong to the nonlinear core
};

/// Least-squares slope of log|deviation| against phi over the nodes whose
/// deviation magnitude falls inside the band, restricted to the requested
/// side of the origin. Returns the positive decay rate.
/// Throws InsufficientPoints when fewer than 8 nodes qualify.
double fit_tail(const Profile& w, Side side, const TailFitOptions& opt = {});

struct DecayReport {
    double tau_minus_pred = 0.0;
    double tau_plus_pred = 0.0;
    double tau_minus_fit = 0.0;
    double tau_plus_fit = 0.0;
    double band_lo = 0.0;
    double band_hi = 0.0;
    double rel_error_minus = 0.0;
    double rel_error_plus = 0.0;
};

/// Predicted rates from the endpoint curvatures plus log-linear fits of the
/// two tails of a computed profile.
DecayReport analyze_decay(const NormalizedPotential& np, const Profile& w,
                          const TailFitOptions& opt = {});

struct VerificationCheck {
    std::string name;
    bool passed = false;
    double value = 0.0;
    double bound = 0.0;
};

struct VerificationReport {
    std::vector<VerificationCheck> checks;
    DecayReport decay;
    bool all_passed = false;
};

/// Bundled sanity checks of a converged front: fixed-point residual, strict
/// monotonicity (on nodes where the deviation is resolvable in double
/// precision), the bounded gap between the two action functionals, the
/// quadratic sandwich for the pointwise functional, tail-decay agreement,
/// and the second-derivative identity satisfied by smooth solutions.
VerificationReport verify_front(const NormalizedPotential& np, const FrontResult& result);

}  // namespace frontforge
