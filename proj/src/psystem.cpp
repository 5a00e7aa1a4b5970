#include "frontforge/psystem.hpp"

#include <cmath>
#include <limits>

#include "frontforge/errors.hpp"

namespace frontforge {

const char* shock_type_name(ShockType t) {
    switch (t) {
        case ShockType::Lax: return "Lax";
        case ShockType::Rarefaction: return "Rarefaction";
        case ShockType::Supersonic: return "Supersonic";
        case ShockType::Subsonic: return "Subsonic";
        case ShockType::Sonic: return "Sonic";
    }
    return "?";
}

double energy_residual(const PotentialSpec& p, double r_minus, double r_plus) {
    const double jump_phi = evaluate(p, r_plus, 0) - evaluate(p, r_minus, 0);
    const double jump_r = r_plus - r_minus;
    const double mean_dphi = 0.5 * (evaluate(p, r_plus, 1) + evaluate(p, r_minus, 1));
    return jump_phi - jump_r * mean_dphi;
}

ShockData complete_shock(const PotentialSpec& p, double r_minus, double r_plus, double v_minus,
                         int branch) {
    if (branch != 1 && branch != 2) {
        throw Error(ErrorCode::BadParams, "shock branch must be 1 or 2");
    }
    if (r_minus == r_plus) {
        throw Error(ErrorCode::DegenerateJump, "asymptotic strains must differ");
    }
    const double jump_r = r_plus - r_minus;
    const double jump_dphi = evaluate(p, r_plus, 1) - evaluate(p, r_minus, 1);
    const double speed_sq = jump_dphi / jump_r;
    if (speed_sq <= 0.0) {
        throw Error(ErrorCode::NonHyperbolic, "[[Phi']]/[[r]] must be positive");
    }
    ShockData s;
    s.r_minus = r_minus;
    s.r_plus = r_plus;
    s.v_minus = v_minus;
    s.sigma = (branch == 1 ? -1.0 : 1.0) * std::sqrt(speed_sq);
    s.v_plus = v_minus - s.sigma * jump_r;
    return s;
}

std::array<double, 3> jump_residuals(const PotentialSpec& p, const ShockData& s) {
    const double jump_r = s.r_plus - s.r_minus;
    const double jump_v = s.v_plus - s.v_minus;
    const double dphi_p = evaluate(p, s.r_plus, 1);
    const double dphi_m = evaluate(p, s.r_minus, 1);
    const double mass = s.sigma * jump_r + jump_v;
    const double momentum = s.sigma * jump_v + (dphi_p - dphi_m);
    const double e_p = 0.5 * s.v_plus * s.v_plus + evaluate(p, s.r_plus, 0);
    const double e_m = 0.5 * s.v_minus * s.v_minus + evaluate(p, s.r_minus, 0);
    const double energy = s.sigma * (e_p - e_m) + (dphi_p * s.v_plus - dphi_m * s.v_minus);
    return {mass, momentum, energy};
}

ShockType classify(const PotentialSpec& p, const ShockData& s) {
    const double curv_m = evaluate(p, s.r_minus, 2);
    const double curv_p = evaluate(p, s.r_plus, 2);
    if (curv_m < 0.0 || curv_p < 0.0) {
        throw Error(ErrorCode::ComplexSoundSpeed, "negative curvature at an asymptotic state");
    }
    const double abs_sigma = std::abs(s.sigma);
    const double abs_lm = std::sqrt(curv_m);
    const double abs_lp = std::sqrt(curv_p);
    constexpr double tie = 1e-9;
    if (std::abs(abs_sigma - abs_lm) <= tie || std::abs(abs_sigma - abs_lp) <= tie) {
        return ShockType::Sonic;
    }
    if (abs_sigma > abs_lm && abs_sigma > abs_lp) return ShockType::Supersonic;
    if (abs_sigma < abs_lm && abs_sigma < abs_lp) return ShockType::Subsonic;
    // Signed comparison; sound speeds carry the sign of the shock speed.
    const double sgn = (s.sigma > 0.0) ? 1.0 : -1.0;
    const double lm = sgn * abs_lm;
    const double lp = sgn * abs_lp;
    if (lm > s.sigma && s.sigma > lp) return ShockType::Lax;
    return ShockType::Rarefaction;
}

namespace {

// Finite-difference third derivative of the stored closed form.
double third_derivative_fd(const PotentialSpec& p, double r) {
    constexpr double delta = 1e-6;
    return (evaluate(p, r + delta, 2) - evaluate(p, r - delta, 2)) / (2.0 * delta);
}

}  // namespace

std::vector<TurningPoint> turning_points(const PotentialSpec& p, double a, double b, int n_grid) {
    if (!(a < b)) throw Error(ErrorCode::BadParams, "interval must satisfy a < b");
    if (n_grid < 16) throw Error(ErrorCode::BadParams, "turning-point grid needs >= 16 points");
    std::vector<double> rs(static_cast<std::size_t>(n_grid));
    std::vector<double> ds(static_cast<std::size_t>(n_grid));
    for (int i = 0; i < n_grid; ++i) {
        rs[static_cast<std::size_t>(i)] = a + (b - a) * i / (n_grid - 1);
        ds[static_cast<std::size_t>(i)] = third_derivative_fd(p, rs[static_cast<std::size_t>(i)]);
    }
    std::vector<TurningPoint> out;
    auto push = [&out](double r, bool falling) {
        if (!out.empty() && std::abs(out.back().location - r) < 1e-9) return;
        out.push_back({r, falling ? TurningKind::ConvexConcave : TurningKind::ConcaveConvex});
    };
    for (int i = 0; i < n_grid; ++i) {
        // A grid point landing exactly on an isolated zero: neighbours
        // straddle it. A vanishing stretch (degenerate flat curvature)
        // yields nothing.
        if (ds[static_cast<std::size_t>(i)] == 0.0 && i > 0 && i + 1 < n_grid &&
            ds[static_cast<std::size_t>(i - 1)] * ds[static_cast<std::size_t>(i + 1)] < 0.0) {
            push(rs[static_cast<std::size_t>(i)], ds[static_cast<std::size_t>(i - 1)] > 0.0);
        }
        if (i + 1 < n_grid &&
            ds[static_cast<std::size_t>(i)] * ds[static_cast<std::size_t>(i + 1)] < 0.0) {
            double lo = rs[static_cast<std::size_t>(i)], hi = rs[static_cast<std::size_t>(i + 1)];
            double flo = ds[static_cast<std::size_t>(i)];
            while (hi - lo > 1e-12) {
                const double mid = 0.5 * (lo + hi);
                const double fm = third_derivative_fd(p, mid);
                if (flo * fm <= 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            push(0.5 * (lo + hi), ds[static_cast<std::size_t>(i)] > 0.0);
        }
    }
    return out;
}

namespace {

// Energy residual scaled by [[r]]^3. Unlike J itself, this function has a
// simple zero across the conservative-shock curve even where the curve
// meets the diagonal, so it is the right corrector target everywhere.
double scaled_residual(const PotentialSpec& p, double rm, double rp) {
    const double d = rp - rm;
    if (std::abs(d) < 1e-12) {
        // Series limit -Phi'''(<r>)/12.
        return -third_derivative_fd(p, 0.5 * (rm + rp)) / 12.0;
    }
    return energy_residual(p, rm, rp) / (d * d * d);
}

struct Vec2 {
    double x, y;
};

bool correct_point(const PotentialSpec& p, Vec2 pred, Vec2 normal, double span, Vec2& out) {
    auto f = [&](double alpha) {
        return scaled_residual(p, pred.x + alpha * normal.x, pred.y + alpha * normal.y);
    };
    // Bracket the root around alpha = 0 on an expanding symmetric stencil.
    const double f0 = f(0.0);
    double lo = 0.0, hi = 0.0, flo = f0, fhi = f0;
    bool bracketed = false;
    double probe = span / 64.0;
    while (probe <= span) {
        const double fp = f(probe);
        if (f0 == 0.0 || f0 * fp <= 0.0) {
            lo = 0.0;
            hi = probe;
            flo = f0;
            fhi = fp;
            bracketed = true;
            break;
        }
        const double fm = f(-probe);
        if (f0 * fm <= 0.0) {
            lo = -probe;
            hi = 0.0;
            flo = fm;
            fhi = f0;
            bracketed = true;
            break;
        }
        probe *= 2.0;
    }
    if (!bracketed) return false;
    (void)fhi;
    for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (flo * fm <= 0.0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    const double alpha = 0.5 * (lo + hi);
    out = {pred.x + alpha * normal.x, pred.y + alpha * normal.y};
    return true;
}

}  // namespace

ShockCurve trace_curve(const PotentialSpec& p, double seed, const TraceOptions& opt) {
    if (!(opt.step > 0.0)) throw Error(ErrorCode::BadParams, "continuation step must be positive");
    if (opt.max_points < 1) throw Error(ErrorCode::BadParams, "max_points must be positive");

    ShockCurve curve;
    curve.seed = seed;

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    auto in_bounds = [&](const Vec2& q) {
        return q.x >= opt.lo && q.x <= opt.hi && q.y >= opt.lo && q.y <= opt.hi;
    };

    // March both ways along the branch; at the seed the branch leaves the
    // diagonal along the anti-diagonal direction.
    auto march = [&](Vec2 dir0) {
        std::vector<std::array<double, 2>> pts;
        Vec2 prev{seed, seed};
        Vec2 tangent = dir0;
        double step = opt.step;
        int halvings = 0;
        while (static_cast<int>(pts.size()) < opt.max_points) {
            const Vec2 pred{prev.x + step * tangent.x, prev.y + step * tangent.y};
            const Vec2 normal{-tangent.y, tangent.x};
            Vec2 corrected;
            if (!correct_point(p, pred, normal, step, corrected) ||
                std::abs(energy_residual(p, corrected.x, corrected.y)) > 1e-10) {
                step *= 0.5;
                if (++halvings > 8) {
                    curve.truncated = true;
                    break;
                }
                continue;
            }
            if (!in_bounds(corrected)) break;
            pts.push_back({corrected.x, corrected.y});
            const double dx = corrected.x - prev.x;
            const double dy = corrected.y - prev.y;
            const double len = std::hypot(dx, dy);
            if (len < 1e-14) {
                curve.truncated = true;
                break;
            }
            tangent = {dx / len, dy / len};
            prev = corrected;
            step = std::min(opt.step, step * 2.0);
            halvings = 0;
        }
        return pts;
    };

    const std::vector<std::array<double, 2>> backward = march({inv_sqrt2, -inv_sqrt2});
    const std::vector<std::array<double, 2>> forward = march({-inv_sqrt2, inv_sqrt2});

    curve.points.reserve(backward.size() + forward.size() + 1);
    for (auto it = backward.rbegin(); it != backward.rend(); ++it) curve.points.push_back(*it);
    curve.points.push_back({seed, seed});
    for (const auto& q : forward) curve.points.push_back(q);
    return curve;
}

}  // namespace frontforge
