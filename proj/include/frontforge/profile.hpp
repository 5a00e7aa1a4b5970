#pragma once

#include <cstddef>
#include <vector>

namespace frontforge {

/// Uniform grid on [-M, M] with spacing h = 1/(2k). The alignment makes the
/// half-unit shifts used by the window operators exact index shifts of k
/// nodes, so no interpolation enters the operators.
struct Grid {
    double h = 0.05;
    int M = 40;
    int k = 10;  // 1/(2h)
    int n = 1601;

    /// Validates h = 1/(2k) with integer k >= 2 and M >= 1.
    static Grid make(double h, int M);

    int center() const { return 2 * M * k; }
    double phi(int i) const { return (i - center()) * h; }
};

/// Grid sampling of a function with constant extension beyond [-M, M].
/// Members of the monotone cone are nondecreasing with limits -1 and +1.
struct Profile {
    Grid grid;
    std::vector<double> values;
    double left_limit = -1.0;
    double right_limit = 1.0;

    double value_ext(std::ptrdiff_t i) const {
        if (i < 0) return left_limit;
        if (i >= static_cast<std::ptrdiff_t>(values.size())) return right_limit;
        return values[static_cast<std::size_t>(i)];
    }
};

/// The discontinuous reference profile sgn(phi), with value 0 at the origin.
Profile shock_profile(const Grid& g);

/// Unit-window moving average (exact for the piecewise-linear interpolant).
Profile average(const Profile& u);

/// Half-unit shift difference u(. + 1/2) - u(. - 1/2).
Profile nabla(const Profile& u);

/// Trapezoid L2 norm of sgn - u over [-M, M]. Requires limits -1, +1.
double l2_deviation(const Profile& u);

/// Trapezoid L2 norm of the node values over [-M, M].
double l2_norm(const Profile& u);

/// Trapezoid L2 norm of the difference of two profiles on the same grid.
double l2_distance(const Profile& a, const Profile& b);

/// Index of the last node with value <= 0, or -1 if none.
int crossing_index(const Profile& u);

struct PinResult {
    Profile profile;
    int shift;  // nodes the content moved to the right
};

/// Integer-node shift placing the sign change at the origin:
/// u(0) <= 0 < u(h). Vacated nodes fill from the constant extensions.
/// Throws NoCrossing when the values never change sign.
PinResult pin(const Profile& u);

struct ConeResult {
    Profile profile;
    double max_correction;
};

/// Clips values to [-1, 1]; if any descent exceeds 1e-14, restores
/// monotonicity by pool-adjacent-violators. Reports the largest |change|.
ConeResult enforce_cone(const Profile& u);

}  // namespace frontforge
