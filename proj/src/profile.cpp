#include "frontforge/profile.hpp"

#include <algorithm>
#include <cmath>

#include "frontforge/errors.hpp"
#include "frontforge/kernels.hpp"

namespace frontforge {

Grid Grid::make(double h, int M) {
    if (!(h > 0.0)) throw Error(ErrorCode::BadParams, "grid spacing must be positive");
    if (M < 1) throw Error(ErrorCode::BadParams, "grid half-width must be a positive integer");
    const double kd = 1.0 / (2.0 * h);
    const long k = std::lround(kd);
    if (k < 2 || std::abs(kd - static_cast<double>(k)) > 1e-9) {
        throw Error(ErrorCode::BadParams, "grid spacing must equal 1/(2k) for an integer k >= 2");
    }
    Grid g;
    g.h = h;
    g.M = M;
    g.k = static_cast<int>(k);
    g.n = 4 * M * g.k + 1;
    return g;
}

Profile shock_profile(const Grid& g) {
    Profile p;
    p.grid = g;
    p.values.resize(static_cast<std::size_t>(g.n));
    const int c = g.center();
    for (int i = 0; i < g.n; ++i) {
        p.values[static_cast<std::size_t>(i)] = (i < c) ? -1.0 : (i > c) ? 1.0 : 0.0;
    }
    return p;
}

Profile average(const Profile& u) {
    Profile out;
    out.grid = u.grid;
    out.left_limit = u.left_limit;
    out.right_limit = u.right_limit;
    out.values.resize(u.values.size());
    kernels::average(u.values, u.left_limit, u.right_limit, u.grid.k, u.grid.h, out.values);
    return out;
}

Profile nabla(const Profile& u) {
    Profile out;
    out.grid = u.grid;
    out.left_limit = 0.0;
    out.right_limit = 0.0;
    out.values.resize(u.values.size());
    kernels::shift_difference(u.values, u.left_limit, u.right_limit, u.grid.k, out.values);
    return out;
}

double l2_deviation(const Profile& u) {
    if (std::abs(u.left_limit + 1.0) > 1e-9 || std::abs(u.right_limit - 1.0) > 1e-9) {
        throw Error(ErrorCode::BadParams, "deviation norm requires limits -1 and +1");
    }
    const int c = u.grid.center();
    std::vector<double> sq(u.values.size());
    for (int i = 0; i < u.grid.n; ++i) {
        const double sgn = (i < c) ? -1.0 : (i > c) ? 1.0 : 0.0;
        const double d = sgn - u.values[static_cast<std::size_t>(i)];
        sq[static_cast<std::size_t>(i)] = d * d;
    }
    return std::sqrt(kernels::trapezoid(sq, u.grid.h));
}

double l2_norm(const Profile& u) {
    std::vector<double> sq(u.values.size());
    for (std::size_t i = 0; i < u.values.size(); ++i) sq[i] = u.values[i] * u.values[i];
    return std::sqrt(kernels::trapezoid(sq, u.grid.h));
}

double l2_distance(const Profile& a, const Profile& b) {
    std::vector<double> sq(a.values.size());
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double d = a.values[i] - b.values[i];
        sq[i] = d * d;
    }
    return std::sqrt(kernels::trapezoid(sq, a.grid.h));
}

int crossing_index(const Profile& u) {
    int last = -1;
    for (int i = 0; i < u.grid.n; ++i) {
        if (u.values[static_cast<std::size_t>(i)] <= 0.0) last = i;
    }
    return last;
}

PinResult pin(const Profile& u) {
    const int j = crossing_index(u);
    if (j < 0 || j == u.grid.n - 1) {
        throw Error(ErrorCode::NoCrossing, "profile has no sign change on [-M, M]");
    }
    const int shift = u.grid.center() - j;
    PinResult res;
    res.shift = shift;
    res.profile.grid = u.grid;
    res.profile.left_limit = u.left_limit;
    res.profile.right_limit = u.right_limit;
    res.profile.values.resize(u.values.size());
    for (int i = 0; i < u.grid.n; ++i) {
        res.profile.values[static_cast<std::size_t>(i)] = u.value_ext(i - shift);
    }
    return res;
}

ConeResult enforce_cone(const Profile& u) {
    ConeResult res;
    res.profile.grid = u.grid;
    res.profile.left_limit = u.left_limit;
    res.profile.right_limit = u.right_limit;
    std::vector<double>& v = res.profile.values;
    v.resize(u.values.size());
    bool violated = false;
    double prev = -1.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        v[i] = std::clamp(u.values[i], -1.0, 1.0);
        if (i > 0 && v[i] < prev - 1e-14) violated = true;
        prev = v[i];
    }

    if (violated) {
        // Pool adjacent violators: merge descending runs into their mean.
        std::vector<double> value;
        std::vector<long> count;
        value.reserve(v.size());
        count.reserve(v.size());
        for (double x : v) {
            value.push_back(x);
            count.push_back(1);
            while (value.size() > 1 && value[value.size() - 2] > value.back()) {
                const double merged =
                    (value[value.size() - 2] * static_cast<double>(count[count.size() - 2]) +
                     value.back() * static_cast<double>(count.back())) /
                    static_cast<double>(count[count.size() - 2] + count.back());
                count[count.size() - 2] += count.back();
                value[value.size() - 2] = merged;
                value.pop_back();
                count.pop_back();
            }
        }
        std::size_t at = 0;
        for (std::size_t b = 0; b < value.size(); ++b) {
            for (long c = 0; c < count[b]; ++c) v[at++] = value[b];
        }
    }

    double corr = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        corr = std::max(corr, std::abs(v[i] - u.values[i]));
    }
    res.max_correction = corr;
    return res;
}

}  // namespace frontforge
