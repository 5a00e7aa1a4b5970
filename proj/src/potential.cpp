#include "frontforge/potential.hpp"

#include <cmath>
#include <limits>

#include "frontforge/errors.hpp"

namespace frontforge {

namespace {

double poly_eval(const std::vector<double>& c, double u, int order) {
    // Horner on the order-th derivative coefficients.
    double s = 0.0;
    for (int i = static_cast<int>(c.size()) - 1; i >= order; --i) {
        double f = c[static_cast<std::size_t>(i)];
        for (int q = 0; q < order; ++q) f *= static_cast<double>(i - q);
        s = s * u + f;
    }
    return s;
}

double trig_eval(const TrigTerm& t, double u, int order) {
    const double x = t.frequency * u;
    const double a = t.amplitude;
    const double b = t.frequency;
    if (t.kind == TrigKind::Cos) {
        switch (order) {
            case 0: return a * std::cos(x);
            case 1: return -a * b * std::sin(x);
            default: return -a * b * b * std::cos(x);
        }
    }
    switch (order) {
        case 0: return a * std::sin(x);
        case 1: return a * b * std::cos(x);
        default: return -a * b * b * std::sin(x);
    }
}

}  // namespace

double evaluate(const PotentialSpec& p, double r, int order) {
    if (order < 0 || order > 2) {
        throw Error(ErrorCode::BadParams, "derivative order must be 0, 1 or 2");
    }
    const double u = r + p.shift;
    double s = poly_eval(p.poly, u, order);
    for (const TrigTerm& t : p.trig) s += trig_eval(t, u, order);
    return s;
}

double NormalizedPotential::evaluate(double w, int order) const {
    if (std::abs(w) > 1.05 + 1e-12) {
        throw Error(ErrorCode::PotentialDomain,
                    "rescaled potential evaluated outside |w| <= 1.05");
    }
    const double half_jump = 0.5 * r_jump;
    const double u = r_mean + half_jump * w;
    const double scale = 4.0 / (dphi_jump * r_jump);
    switch (order) {
        case 0: return scale * frontforge::evaluate(base, u, 0) - (2.0 * dphi_mean / dphi_jump) * w;
        case 1:
            return scale * half_jump * frontforge::evaluate(base, u, 1) -
                   2.0 * dphi_mean / dphi_jump;
        case 2: return scale * half_jump * half_jump * frontforge::evaluate(base, u, 2);
        default: throw Error(ErrorCode::BadParams, "derivative order must be 0, 1 or 2");
    }
}

NormalizedPotential build_normalized(const PotentialSpec& p, double r_minus, double r_plus) {
    if (r_minus == r_plus) {
        throw Error(ErrorCode::DegenerateJump, "asymptotic strains must differ");
    }
    NormalizedPotential np;
    np.base = p;
    np.r_mean = 0.5 * (r_plus + r_minus);
    np.r_jump = r_plus - r_minus;
    const double dp = evaluate(p, r_plus, 1);
    const double dm = evaluate(p, r_minus, 1);
    np.dphi_mean = 0.5 * (dp + dm);
    np.dphi_jump = dp - dm;
    if (np.dphi_jump * np.r_jump <= 0.0) {
        throw Error(ErrorCode::NonHyperbolic, "[[Phi']] * [[r]] must be positive");
    }
    np.lambda_minus = np.evaluate(-1.0, 2);
    np.lambda_plus = np.evaluate(1.0, 2);
    return np;
}

double g_area(const NormalizedPotential& np, double w) {
    if (std::abs(w) > 1.0) {
        throw Error(ErrorCode::OutOfDomain, "signed area defined for |w| <= 1");
    }
    return np.evaluate(-1.0, 0) - np.evaluate(w, 0) + 0.5 * w * w - 0.5;
}

AssumptionReport check_assumptions(const NormalizedPotential& np, int n_samples) {
    if (n_samples < 3) {
        throw Error(ErrorCode::BadParams, "need at least 3 samples");
    }
    AssumptionReport rep;
    rep.sample_count = n_samples;

    // R: every sampled evaluation is finite.
    rep.regularity = {true, 0.0, 0.0};
    for (int j = 0; j < n_samples; ++j) {
        const double w = -1.0 + 2.0 * j / (n_samples - 1);
        for (int order = 0; order <= 2; ++order) {
            const double v = np.evaluate(w, order);
            if (!std::isfinite(v)) {
                rep.regularity = {false, w, v};
                break;
            }
        }
        if (!rep.regularity.passed) break;
    }

    // N: slopes at the endpoints.
    {
        const double dev_m = std::abs(np.evaluate(-1.0, 1) + 1.0);
        const double dev_p = std::abs(np.evaluate(1.0, 1) - 1.0);
        const bool minus_worse = dev_m >= dev_p;
        rep.normalization = {std::max(dev_m, dev_p) <= 1e-10, minus_worse ? -1.0 : 1.0,
                             std::max(dev_m, dev_p)};
    }

    // C: curvature on the sample grid.
    {
        double worst = std::numeric_limits<double>::infinity();
        double at = -1.0;
        for (int j = 0; j < n_samples; ++j) {
            const double w = -1.0 + 2.0 * j / (n_samples - 1);
            const double v = np.evaluate(w, 2);
            if (v < worst) {
                worst = v;
                at = w;
            }
        }
        rep.convexity = {worst >= -1e-10, at, worst};
    }

    // E: endpoint value gap.
    {
        const double gap = np.evaluate(1.0, 0) - np.evaluate(-1.0, 0);
        rep.energy = {std::abs(gap) <= 1e-10, 1.0, gap};
    }

    // S: endpoint curvature strictly below 1.
    {
        const bool minus_worse = np.lambda_minus >= np.lambda_plus;
        const double worst = std::max(np.lambda_minus, np.lambda_plus);
        rep.supersonic = {np.lambda_minus < 1.0 - 1e-12 && np.lambda_plus < 1.0 - 1e-12,
                          minus_worse ? -1.0 : 1.0, worst};
    }

    // A: signed area on interior samples.
    {
        double worst = std::numeric_limits<double>::infinity();
        double at = 0.0;
        for (int j = 1; j + 1 < n_samples; ++j) {
            const double w = -1.0 + 2.0 * j / (n_samples - 1);
            const double v = g_area(np, w);
            if (v < worst) {
                worst = v;
                at = w;
            }
        }
        rep.area = {worst >= -1e-12, at, worst};
    }

    return rep;
}

PotentialSpec builtin_spec(const std::string& name, std::span<const double> params) {
    auto need = [&](std::size_t n) {
        if (params.size() != n) {
            throw Error(ErrorCode::BadParams,
                        "builtin '" + name + "' expects " + std::to_string(n) + " parameter(s)");
        }
    };
    PotentialSpec p;
    if (name == "cubic_force") {
        need(1);
        const double beta = params[0];
        if (!(beta > 0.0 && beta < 0.5)) {
            throw Error(ErrorCode::BadParams, "cubic_force requires 0 < beta < 1/2");
        }
        p.poly = {0.0, 0.0, 0.5 * (1.0 + beta), 0.0, -0.25 * beta};
    } else if (name == "tilted") {
        need(2);
        const double beta = params[0];
        const double delta = params[1];
        if (!(beta > 0.0 && beta < 0.5)) {
            throw Error(ErrorCode::BadParams, "tilted requires 0 < beta < 1/2");
        }
        if (1.0 - 2.0 * beta - 2.0 * std::abs(delta) < -1e-12) {
            throw Error(ErrorCode::BadParams, "tilted loses convexity on [-1, 1] for |delta| too large");
        }
        p.poly = {0.0, delta, 0.5 * (1.0 + beta), -delta / 3.0, -0.25 * beta};
    } else if (name == "concave_convex") {
        need(1);
        const double beta = params[0];
        if (!(beta > 0.0 && beta <= 1.0)) {
            throw Error(ErrorCode::BadParams, "concave_convex requires 0 < beta <= 1 for convexity");
        }
        p.poly = {0.0, 0.0, 0.5 * (1.0 - beta), 0.0, 0.25 * beta};
    } else if (name == "figure2") {
        need(0);
        p.poly = {0.0, 1.0, 0.5, 0.05};
        p.trig = {{-0.25, 2.0, TrigKind::Cos}, {0.1, 3.0, TrigKind::Sin}};
        p.shift = -1.0;
    } else {
        throw Error(ErrorCode::BadParams, "unknown builtin potential '" + name + "'");
    }
    return p;
}

NormalizedPotential builtin(const std::string& name, std::span<const double> params) {
    return build_normalized(builtin_spec(name, params), -1.0, 1.0);
}

}  // namespace frontforge
