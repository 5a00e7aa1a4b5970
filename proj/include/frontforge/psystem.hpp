#pragma once

#include <array>
#include <string>
#include <vector>

#include "frontforge/potential.hpp"

namespace frontforge {

/// Asymptotic states and speed of a shock. Valid instances satisfy the mass
/// and momentum jump relations sigma*[[r]] + [[v]] = 0 and
/// sigma*[[v]] + [[Phi'(r)]] = 0.
struct ShockData {
    double r_minus = 0.0;
    double r_plus = 0.0;
    double v_minus = 0.0;
    double v_plus = 0.0;
    double sigma = 0.0;
};

enum class ShockType { Lax, Rarefaction, Supersonic, Subsonic, Sonic };

const char* shock_type_name(ShockType t);

/// Energy jump residual J = [[Phi(r)]] - [[r]] <Phi'(r)>; zero exactly for
/// shocks that also balance the energy.
double energy_residual(const PotentialSpec& p, double r_minus, double r_plus);

/// Completes (r-, r+, v-) to a full shock. branch 1 picks sigma < 0,
/// branch 2 picks sigma > 0; sigma^2 = [[Phi']]/[[r]].
ShockData complete_shock(const PotentialSpec& p, double r_minus, double r_plus, double v_minus,
                         int branch);

/// Residuals of the mass, momentum and energy jump relations.
std::array<double, 3> jump_residuals(const PotentialSpec& p, const ShockData& s);

/// Five-type classification against the sound speeds sqrt(Phi''(r+-)).
/// Equality within 1e-9 wins as Sonic. Throws ComplexSoundSpeed when a
/// sound speed would be imaginary.
ShockType classify(const PotentialSpec& p, const ShockData& s);

enum class TurningKind { ConvexConcave, ConcaveConvex };

struct TurningPoint {
    double location = 0.0;
    TurningKind kind = TurningKind::ConvexConcave;
};

/// Sign changes of the finite-difference third derivative on a grid over
/// [a, b], refined by bisection. ConvexConcave marks a local maximum of
/// Phi'', ConcaveConvex a local minimum. Intervals where the third
/// derivative vanishes identically yield no turning points.
std::vector<TurningPoint> turning_points(const PotentialSpec& p, double a, double b, int n_grid);

struct TraceOptions {
    double step = 0.02;
    int max_points = 2000;
    double lo = -1e300;  // box bounds for both coordinates
    double hi = 1e300;
};

/// One connected curve of energy-balanced shock data in the (r-, r+) plane.
struct ShockCurve {
    std::vector<std::array<double, 2>> points;  // ordered along the curve
    double seed = 0.0;
    bool truncated = false;  // a corrector failed before max_points/bounds
};

/// Pseudo-arclength continuation of J(r-, r+) = 0 through the diagonal
/// point (seed, seed), both directions. The corrector solves for the
/// residual scaled by [[r]]^3, which stays regular across the diagonal.
/// Every accepted point satisfies |J| <= 1e-10.
ShockCurve trace_curve(const PotentialSpec& p, double seed, const TraceOptions& opt);

}  // namespace frontforge
