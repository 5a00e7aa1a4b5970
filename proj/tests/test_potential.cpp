#include <cmath>
#include <vector>

#include "doctest.h"

#include "frontforge/errors.hpp"
#include "frontforge/potential.hpp"

using namespace frontforge;

namespace {

PotentialSpec harmonic() {
    PotentialSpec p;
    p.poly = {0.0, 0.0, 0.5};
    return p;
}

double fd_derivative(const PotentialSpec& p, double r, int order) {
    constexpr double d = 1e-5;
    return (evaluate(p, r + d, order - 1) - evaluate(p, r - d, order - 1)) / (2.0 * d);
}

}  // namespace

TEST_CASE("closed-form evaluation of the harmonic potential") {
    const PotentialSpec p = harmonic();
    CHECK(evaluate(p, 3.0, 1) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(evaluate(p, -7.3, 2) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(evaluate(p, 2.0, 0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS((void)evaluate(p, 0.0, 3), Error);
}

TEST_CASE("mixed polynomial/trigonometric example evaluates term by term") {
    const PotentialSpec p = builtin_spec("figure2", {});
    // shifted argument zero: only the trig terms survive
    const double expect = -0.25 * std::cos(0.0) + 0.1 * std::sin(0.0);
    CHECK(evaluate(p, 1.0, 0) == doctest::Approx(expect).epsilon(1e-15));
    CHECK(expect == -0.25);

    // derivatives agree with central differences of the order below
    for (double r : {-0.7, 0.3, 1.9}) {
        for (int order : {1, 2}) {
            CHECK(evaluate(p, r, order) ==
                  doctest::Approx(fd_derivative(p, r, order)).epsilon(1e-8));
        }
    }
}

TEST_CASE("harmonic potential is a fixed point of the rescaling") {
    const NormalizedPotential np = build_normalized(harmonic(), -1.0, 1.0);
    for (int i = 0; i <= 100; ++i) {
        const double w = -1.0 + 0.02 * i;
        CHECK(std::abs(np.evaluate(w, 0) - 0.5 * w * w) <= 1e-12);
        CHECK(std::abs(np.evaluate(w, 1) - w) <= 1e-12);
        CHECK(std::abs(np.evaluate(w, 2) - 1.0) <= 1e-12);
    }
}

TEST_CASE("rescaled force always has unit endpoint slopes") {
    const std::vector<std::pair<PotentialSpec, std::array<double, 2>>> cases = {
        {builtin_spec("cubic_force", std::vector<double>{0.3}), {-1.0, 1.0}},
        {builtin_spec("tilted", std::vector<double>{0.3, 0.05}), {-1.0, 1.0}},
        {builtin_spec("figure2", {}), {-0.5, 1.5}},
        {builtin_spec("figure2", {}), {0.2, 2.4}},
    };
    for (const auto& [spec, interval] : cases) {
        const NormalizedPotential np = build_normalized(spec, interval[0], interval[1]);
        CHECK(std::abs(np.evaluate(-1.0, 1) + 1.0) <= 1e-12);
        CHECK(std::abs(np.evaluate(1.0, 1) - 1.0) <= 1e-12);
    }
}

TEST_CASE("endpoint value gap vanishes exactly for energy-balanced data") {
    // odd force: (+-a) data balances the energy for every amplitude
    const PotentialSpec p = builtin_spec("cubic_force", std::vector<double>{0.4});
    for (double a : {0.3, 0.7, 1.0}) {
        const NormalizedPotential np = build_normalized(p, -a, a);
        CHECK(std::abs(np.evaluate(1.0, 0) - np.evaluate(-1.0, 0)) <= 1e-12);
    }
    // linear force: every jump balances the energy
    const NormalizedPotential nh = build_normalized(harmonic(), 0.2, 1.9);
    CHECK(std::abs(nh.evaluate(1.0, 0) - nh.evaluate(-1.0, 0)) <= 1e-12);
}

TEST_CASE("rescaling rejects data without a real wave speed") {
    PotentialSpec downhill;
    downhill.poly = {0.0, 0.0, -0.5};
    CHECK_THROWS_AS((void)build_normalized(downhill, -1.0, 1.0), Error);
    CHECK_THROWS_AS((void)build_normalized(harmonic(), 1.0, 1.0), Error);
}

TEST_CASE("rescaled evaluation tolerates slight overshoot only") {
    const NormalizedPotential np = builtin("cubic_force", std::vector<double>{0.4});
    CHECK_NOTHROW((void)np.evaluate(1.049, 0));
    CHECK_THROWS_AS((void)np.evaluate(1.06, 0), Error);
}

TEST_CASE("signed area of the cubic-force family matches the closed form") {
    const double beta = 0.4;
    const NormalizedPotential np = builtin("cubic_force", std::vector<double>{beta});
    CHECK(g_area(np, -1.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(g_area(np, 0.0) == doctest::Approx(0.1).epsilon(1e-13));
    for (int i = 0; i <= 1000; ++i) {
        const double w = -1.0 + 0.002 * i;
        const double exact = 0.25 * beta * (1.0 - w * w) * (1.0 - w * w);
        CHECK(std::abs(g_area(np, w) - exact) <= 1e-12);
    }
    CHECK(std::abs(g_area(np, 1.0)) <= 1e-12);  // energy-balanced data
    CHECK_THROWS_AS((void)g_area(np, 1.0001), Error);
}

TEST_CASE("area vanishes quadratically at the endpoints when balanced") {
    const NormalizedPotential np = builtin("cubic_force", std::vector<double>{0.35});
    const double h = 1e-4;
    // one-sided second-order differences of g at the endpoints
    const double slope_m = (g_area(np, -1.0 + h) - g_area(np, -1.0)) / h;
    const double slope_p = (g_area(np, 1.0) - g_area(np, 1.0 - h)) / h;
    CHECK(std::abs(slope_m) <= 1e-3);
    CHECK(std::abs(slope_p) <= 1e-3);
}

TEST_CASE("admissibility report for the three parametric families") {
    SUBCASE("cubic force satisfies everything") {
        const AssumptionReport rep = check_assumptions(builtin("cubic_force", std::vector<double>{0.4}), 501);
        CHECK(rep.all_passed());
    }
    SUBCASE("concave-convex family fails the subsonic curvature bound") {
        const NormalizedPotential np = builtin("concave_convex", std::vector<double>{0.4});
        const AssumptionReport rep = check_assumptions(np, 501);
        CHECK_FALSE(rep.supersonic.passed);
        CHECK(rep.supersonic.worst_value == doctest::Approx(1.8).epsilon(1e-12));
        CHECK(rep.energy.passed);
        CHECK(rep.convexity.passed);
        CHECK_FALSE(rep.area.passed);
    }
    SUBCASE("tilted family fails energy balance with the expected gap") {
        const double delta = 0.1;
        const NormalizedPotential np = builtin("tilted", std::vector<double>{0.4, delta});
        const AssumptionReport rep = check_assumptions(np, 501);
        CHECK_FALSE(rep.energy.passed);
        CHECK(rep.energy.worst_value == doctest::Approx(4.0 / 3.0 * delta).epsilon(1e-12));
        CHECK(rep.regularity.passed);
        CHECK(rep.normalization.passed);
        CHECK(rep.convexity.passed);
        CHECK(rep.supersonic.passed);
    }
    CHECK_THROWS_AS((void)check_assumptions(builtin("cubic_force", std::vector<double>{0.4}), 2), Error);
}

TEST_CASE("parametric family endpoints and parameter validation") {
    const NormalizedPotential cubic = builtin("cubic_force", std::vector<double>{0.4});
    CHECK(cubic.lambda_minus == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(cubic.lambda_plus == doctest::Approx(0.2).epsilon(1e-12));

    const NormalizedPotential tilt = builtin("tilted", std::vector<double>{0.4, 0.1});
    CHECK(std::abs(tilt.evaluate(-1.0, 1) + 1.0) <= 1e-12);
    CHECK(std::abs(tilt.evaluate(1.0, 1) - 1.0) <= 1e-12);

    const NormalizedPotential cc = builtin("concave_convex", std::vector<double>{0.4});
    CHECK(std::abs(cc.evaluate(0.0, 1)) <= 1e-15);  // odd force pins the interior level at zero

    CHECK_THROWS_AS((void)builtin("cubic_force", std::vector<double>{0.6}), Error);
    CHECK_THROWS_AS((void)builtin("cubic_force", std::vector<double>{-0.1}), Error);
    CHECK_THROWS_AS((void)builtin("concave_convex", std::vector<double>{1.5}), Error);
    CHECK_THROWS_AS((void)builtin("tilted", std::vector<double>{0.4, 0.2}), Error);
    CHECK_THROWS_AS((void)builtin("nope", {}), Error);
    CHECK_THROWS_AS((void)builtin("figure2", std::vector<double>{1.0}), Error);
}

TEST_CASE("rescaling an already rescaled potential reproduces it") {
    const PotentialSpec spec = builtin_spec("cubic_force", std::vector<double>{0.25});
    const NormalizedPotential np = build_normalized(spec, -1.0, 1.0);
    for (int i = 0; i <= 200; ++i) {
        const double w = -1.0 + 0.01 * i;
        for (int order = 0; order <= 2; ++order) {
            CHECK(std::abs(np.evaluate(w, order) - evaluate(spec, w, order)) <= 1e-12);
        }
    }
}
