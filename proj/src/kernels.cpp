#include "frontforge/kernels.hpp"

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace frontforge::kernels {

int max_threads() {
    static const int cached = [] {
#ifdef _OPENMP
        int n = omp_get_max_threads();
        if (const char* env = std::getenv("FRONT_FORGE_THREADS")) {
            const int cap = std::atoi(env);
            if (cap > 0 && cap < n) n = cap;
        }
        return n;
#else
        return 1;
#endif
    }();
    return cached;
}

namespace {

inline double at_ext(std::span<const double> u, double left, double right, std::ptrdiff_t i) {
    if (i < 0) return left;
    if (i >= static_cast<std::ptrdiff_t>(u.size())) return right;
    return u[static_cast<std::size_t>(i)];
}

}  // namespace

void average(std::span<const double> u, double left, double right, int k, double h,
             std::span<double> out) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for if (n > 2048) num_threads(max_threads()) schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        double s;
        if (i >= k && i + k < n) {
            s = 0.5 * (u[i - k] + u[i + k]);
            for (std::ptrdiff_t j = i - k + 1; j <= i + k - 1; ++j) s += u[j];
        } else {
            s = 0.5 * (at_ext(u, left, right, i - k) + at_ext(u, left, right, i + k));
            for (std::ptrdiff_t j = i - k + 1; j <= i + k - 1; ++j) s += at_ext(u, left, right, j);
        }
        out[static_cast<std::size_t>(i)] = h * s;
    }
}

void average_reference(std::span<const double> u, double left, double right, int k, double h,
                       std::span<double> out) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(u.size());
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::ptrdiff_t j = i - k; j <= i + k - 1; ++j) {
            s += 0.5 * (at_ext(u, left, right, j) + at_ext(u, left, right, j + 1));
        }
        out[static_cast<std::size_t>(i)] = h * s;
    }
}

void shift_difference(std::span<const double> u, double left, double right, int k,
                      std::span<double> out) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for if (n > 2048) num_threads(max_threads()) schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] =
            at_ext(u, left, right, i + k) - at_ext(u, left, right, i - k);
    }
}

double dot(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0, comp = 0.0;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double y = a[i] * b[i] - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

double trapezoid(std::span<const double> f, double h) {
    const std::size_t n = f.size();
    if (n < 2) return 0.0;
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        const double y = w * f[i] - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return h * sum;
}

}  // namespace frontforge::kernels
