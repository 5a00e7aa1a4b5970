#pragma once

#include <cstddef>
#include <span>

// Low-level array kernels. The OpenMP variants compute every output element
// independently with a fixed per-element summation order, so results are
// bitwise identical for any thread count. The *_reference variants are plain
// serial loops kept as an independent route for testing and benchmarking.

namespace frontforge::kernels {

/// Thread cap honoured by all parallel kernels. Reads FRONT_FORGE_THREADS
/// once; values <= 0 or unset mean "use the OpenMP default".
int max_threads();

/// Moving-window trapezoid average over a unit window of width 2k*h = 1:
///   out[i] = h * (u[i-k]/2 + u[i-k+1] + ... + u[i+k-1] + u[i+k]/2).
/// Reads outside [0, n) resolve to the constant extensions left/right.
void average(std::span<const double> u, double left, double right, int k, double h,
             std::span<double> out);

/// Same quantity accumulated subinterval by subinterval (serial reference).
void average_reference(std::span<const double> u, double left, double right, int k, double h,
                       std::span<double> out);

/// Centered half-shift difference: out[i] = u[i+k] - u[i-k].
void shift_difference(std::span<const double> u, double left, double right, int k,
                      std::span<double> out);

/// Compensated dot product (deterministic, serial).
double dot(std::span<const double> a, std::span<const double> b);

/// Compensated trapezoid sum with spacing h (half weights at both ends).
double trapezoid(std::span<const double> f, double h);

/// Elementwise map out[i] = f(in[i]).
template <class F>
void map(std::span<const double> in, std::span<double> out, F&& f) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(in.size());
#pragma omp parallel for if (n > 2048) num_threads(max_threads()) schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = f(in[static_cast<std::size_t>(i)]);
    }
}

}  // namespace frontforge::kernels
