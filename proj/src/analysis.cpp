#include "frontforge/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "frontforge/errors.hpp"
#include "frontforge/kernels.hpp"

namespace frontforge {

double decay_rate(double lambda) {
    if (lambda <= 0.0) throw Error(ErrorCode::NonPositive, "curvature must be positive");
    if (lambda >= 1.0 - 1e-12) {
        throw Error(ErrorCode::Sonic, "decay rate degenerates as the curvature reaches 1");
    }
    // f < 0 between the double root at 0 and the simple positive root.
    auto f = [lambda](double tau) {
        const double s = std::sinh(0.5 * tau);
        return 4.0 * lambda * s * s - tau * tau;
    };
    double hi = 1.0;
    while (f(hi) <= 0.0) {
        hi *= 2.0;
        if (hi > 1e8) throw Error(ErrorCode::NonPositive, "failed to bracket the decay rate");
    }
    double lo = 0.5 * hi;
    while (f(lo) > 0.0) lo *= 0.5;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double fit_tail(const Profile& w, Side side, const TailFitOptions& opt) {
    const int c = w.grid.center();
    std::vector<double> xs, ys;
    for (int i = 0; i < w.grid.n; ++i) {
        const double phi = w.grid.phi(i);
        if (side == Side::Right && !(phi > 0.0)) continue;
        if (side == Side::Left && !(phi < 0.0)) continue;
        const double sgn = (i < c) ? -1.0 : (i > c) ? 1.0 : 0.0;
        const double dev = std::abs(sgn - w.values[static_cast<std::size_t>(i)]);
        if (dev < opt.band_lo || dev > opt.band_hi) continue;
        xs.push_back(phi);
        ys.push_back(std::log(dev));
    }
    if (xs.size() < 8) {
        throw Error(ErrorCode::InsufficientPoints,
                    "fewer than 8 nodes fall in the tail-fit band");
    }
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    const double slope = sxy / sxx;
    return (side == Side::Right) ? -slope : slope;
}

DecayReport analyze_decay(const NormalizedPotential& np, const Profile& w,
                          const TailFitOptions& opt) {
    DecayReport rep;
    rep.band_lo = opt.band_lo;
    rep.band_hi = opt.band_hi;
    rep.tau_minus_pred = decay_rate(np.lambda_minus);
    rep.tau_plus_pred = decay_rate(np.lambda_plus);
    rep.tau_minus_fit = fit_tail(w, Side::Left, opt);
    rep.tau_plus_fit = fit_tail(w, Side::Right, opt);
    rep.rel_error_minus = std::abs(rep.tau_minus_fit - rep.tau_minus_pred) / rep.tau_minus_pred;
    rep.rel_error_plus = std::abs(rep.tau_plus_fit - rep.tau_plus_pred) / rep.tau_plus_pred;
    return rep;
}

namespace {

// Extremes of g(w) over the squared distance to the nearer endpoint, the
// constants of the quadratic sandwich for pinned profiles. The endpoint
// limits are half the endpoint curvatures of g.
void sandwich_constants(const NormalizedPotential& np, double& c_lo, double& c_hi) {
    c_lo = std::numeric_limits<double>::infinity();
    c_hi = -std::numeric_limits<double>::infinity();
    constexpr int n = 2001;
    for (int i = 0; i < n; ++i) {
        const double w = -1.0 + 1e-4 + (2.0 - 2e-4) * i / (n - 1);
        const double target = (w >= 0.0) ? 1.0 : -1.0;
        const double d = target - w;
        const double ratio = g_area(np, w) / (d * d);
        c_lo = std::min(c_lo, ratio);
        c_hi = std::max(c_hi, ratio);
    }
    const double end_minus = 0.5 * (1.0 - np.lambda_minus);
    const double end_plus = 0.5 * (1.0 - np.lambda_plus);
    c_lo = std::min({c_lo, end_minus, end_plus});
    c_hi = std::max({c_hi, end_minus, end_plus});
}

// Residual of the second-derivative identity satisfied by smooth profiles:
// the centered second difference against the half-shift difference of
// curvature-weighted slopes.
double smoothness_residual(const NormalizedPotential& np, const Profile& w) {
    const Grid& g = w.grid;
    std::vector<double> avg(w.values.size());
    kernels::average(w.values, w.left_limit, w.right_limit, g.k, g.h, avg);
    std::vector<double> grad(w.values.size());
    kernels::shift_difference(w.values, w.left_limit, w.right_limit, g.k, grad);
    std::vector<double> q(w.values.size());
    for (std::size_t i = 0; i < q.size(); ++i) q[i] = np.evaluate(avg[i], 2) * grad[i];
    double worst = 0.0;
    for (int i = 1; i + 1 < g.n; ++i) {
        const double second =
            (w.values[static_cast<std::size_t>(i + 1)] - 2.0 * w.values[static_cast<std::size_t>(i)] +
             w.values[static_cast<std::size_t>(i - 1)]) /
            (g.h * g.h);
        const auto q_at = [&](int j) {
            if (j < 0) return 0.0;
            if (j >= g.n) return 0.0;
            return q[static_cast<std::size_t>(j)];
        };
        const double rhs = q_at(i + g.k) - q_at(i - g.k);
        worst = std::max(worst, std::abs(second - rhs));
    }
    return worst;
}

}  // namespace

VerificationReport verify_front(const NormalizedPotential& np, const FrontResult& result) {
    VerificationReport rep;
    const Profile& w = result.profile;
    const double h = w.grid.h;

    {
        const double r = residual(np, w);
        rep.checks.push_back({"residual", r <= 1e-6, r, 1e-6});
    }

    {
        // Strict increase where the deviation from the limits is resolvable;
        // saturated tail nodes are equal to the limit in double precision.
        bool nondecreasing = true;
        double min_inc = std::numeric_limits<double>::infinity();
        for (int i = 1; i < w.grid.n; ++i) {
            const double a = w.values[static_cast<std::size_t>(i - 1)];
            const double b = w.values[static_cast<std::size_t>(i)];
            if (b < a) nondecreasing = false;
            if (std::abs(a) < 1.0 - 1e-12 && std::abs(b) < 1.0 - 1e-12) {
                min_inc = std::min(min_inc, b - a);
            }
        }
        bool strict = min_inc > 0.0;
        if (!std::isfinite(min_inc)) {  // no resolvable pair at all
            min_inc = 0.0;
            strict = true;
        }
        rep.checks.push_back({"strict_monotonicity", nondecreasing && strict, min_inc, 0.0});
    }

    {
        const double gap = std::abs(action(np, w) - action_sharp(np, w));
        const double bound = 4.0 + 10.0 * h;
        rep.checks.push_back({"action_gap", gap <= bound, gap, bound});
    }

    {
        double c_lo, c_hi;
        sandwich_constants(np, c_lo, c_hi);
        const double dev_sq = l2_deviation(w) * l2_deviation(w);
        const double sharp = action_sharp(np, w);
        const double slack = 1e-12 * (1.0 + std::abs(sharp));
        rep.checks.push_back(
            {"sharp_lower", sharp >= c_lo * dev_sq - slack, sharp, c_lo * dev_sq});
        rep.checks.push_back(
            {"sharp_upper", sharp <= c_hi * dev_sq + slack, sharp, c_hi * dev_sq});
    }

    try {
        rep.decay = analyze_decay(np, w);
        rep.checks.push_back({"decay_right", rep.decay.rel_error_plus <= 0.10,
                              rep.decay.rel_error_plus, 0.10});
        rep.checks.push_back({"decay_left", rep.decay.rel_error_minus <= 0.10,
                              rep.decay.rel_error_minus, 0.10});
    } catch (const Error&) {
        rep.checks.push_back({"decay_right", false, std::numeric_limits<double>::quiet_NaN(), 0.10});
        rep.checks.push_back({"decay_left", false, std::numeric_limits<double>::quiet_NaN(), 0.10});
    }

    {
        const double wpp = smoothness_residual(np, w);
        const double bound = 200.0 * h * h;
        rep.checks.push_back({"smoothness", wpp <= bound, wpp, bound});
    }

    rep.all_passed = std::all_of(rep.checks.begin(), rep.checks.end(),
                                 [](const VerificationCheck& c) { return c.passed; });
    return rep;
}

}  // namespace frontforge
