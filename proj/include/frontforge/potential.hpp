#pragma once

#include <span>
#include <string>
#include <vector>

namespace frontforge {

enum class TrigKind { Cos, Sin };

struct TrigTerm {
    double amplitude = 0.0;
    double frequency = 0.0;
    TrigKind kind = TrigKind::Cos;
};

/// Closed-form interaction potential
///   Phi(r) = sum_i poly[i] * (r+shift)^i  +  sum_t amp_t * cos/sin(freq_t * (r+shift)).
/// First and second derivatives are evaluated term by term, so they are exact
/// for the stored expression.
struct PotentialSpec {
    std::vector<double> poly;
    std::vector<TrigTerm> trig;
    double shift = 0.0;
};

/// Phi, Phi' or Phi'' at r (order 0, 1 or 2).
double evaluate(const PotentialSpec& p, double r, int order);

/// Potential rescaled by shock data (r_minus, r_plus) so that the rescaled
/// force satisfies Phi'(-1) = -1 and Phi'(+1) = +1 by construction. The
/// rescaled potential is only meaningful on [-1, 1]; evaluation tolerates
/// |w| <= 1.05 to absorb transient overshoot and throws beyond that.
struct NormalizedPotential {
    PotentialSpec base;
    double r_mean = 0.0;     // <r>
    double r_jump = 0.0;     // [[r]]
    double dphi_mean = 0.0;  // <Phi'(r)>
    double dphi_jump = 0.0;  // [[Phi'(r)]]
    double lambda_minus = 0.0;  // curvature at w = -1
    double lambda_plus = 0.0;   // curvature at w = +1

    double evaluate(double w, int order) const;
};

/// Throws NonHyperbolic when [[Phi']] * [[r]] <= 0 (no real wave speed) and
/// DegenerateJump when r_minus == r_plus.
NormalizedPotential build_normalized(const PotentialSpec& p, double r_minus, double r_plus);

/// Signed area between the identity and the rescaled force over [-1, w]:
///   g(w) = Phi(-1) - Phi(w) + w^2/2 - 1/2.
/// Throws OutOfDomain for |w| > 1.
double g_area(const NormalizedPotential& np, double w);

struct ConditionResult {
    bool passed = false;
    double worst_location = 0.0;
    double worst_value = 0.0;
};

/// Sampled check of the six admissibility conditions:
///   R finite evaluations, N endpoint slopes +-1, C nonnegative curvature,
///   E equal endpoint values, S endpoint curvature < 1, A positive signed area.
struct AssumptionReport {
    ConditionResult regularity;     // R
    ConditionResult normalization;  // N
    ConditionResult convexity;      // C
    ConditionResult energy;         // E
    ConditionResult supersonic;     // S
    ConditionResult area;           // A
    int sample_count = 0;

    bool all_passed() const {
        return regularity.passed && normalization.passed && convexity.passed && energy.passed &&
               supersonic.passed && area.passed;
    }
};

AssumptionReport check_assumptions(const NormalizedPotential& np, int n_samples);

// Canonical test potentials. All but "figure2" are stated directly in the
// rescaled variable, so normalizing them over (-1, +1) reproduces them.
//   cubic_force(beta):    Phi'(w) = w + beta*(w - w^3),          0 < beta < 1/2
//   tilted(beta, delta):  Phi'(w) = w + beta*(w - w^3) + delta*(1 - w^2)
//   concave_convex(beta): Phi'(w) = w - beta*(w - w^3),          0 < beta <= 1
//   figure2:              fixed polynomial + trigonometric example (raw, not
//                         rescaled; mainly for the shock-algebra routines)
PotentialSpec builtin_spec(const std::string& name, std::span<const double> params);
NormalizedPotential builtin(const std::string& name, std::span<const double> params);

}  // namespace frontforge
