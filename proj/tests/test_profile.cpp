#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"

#include "frontforge/errors.hpp"
#include "frontforge/kernels.hpp"
#include "frontforge/profile.hpp"

using namespace frontforge;

namespace {

// Random member of the monotone cone with limits -1, +1, saturated at the
// boundary so the constant extensions are consistent.
Profile random_cone_profile(const Grid& g, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> width(2.0, g.M * 0.75);
    std::uniform_real_distribution<double> jitter(0.0, 1.0);
    const double span = width(rng);
    Profile p;
    p.grid = g;
    p.values.resize(static_cast<std::size_t>(g.n));
    std::vector<double> inc(static_cast<std::size_t>(g.n), 0.0);
    double total = 0.0;
    for (int i = 0; i < g.n; ++i) {
        const double phi = g.phi(i);
        if (std::abs(phi) < span) {
            inc[static_cast<std::size_t>(i)] = jitter(rng);
            total += inc[static_cast<std::size_t>(i)];
        }
    }
    double acc = 0.0;
    for (int i = 0; i < g.n; ++i) {
        acc += inc[static_cast<std::size_t>(i)];
        p.values[static_cast<std::size_t>(i)] = -1.0 + 2.0 * acc / total;
    }
    return p;
}

}  // namespace

TEST_CASE("grid alignment validation") {
    const Grid g = Grid::make(0.05, 40);
    CHECK(g.k == 10);
    CHECK(g.n == 1601);
    CHECK(g.phi(g.center()) == 0.0);
    CHECK(g.phi(0) == doctest::Approx(-40.0).epsilon(1e-15));
    CHECK(Grid::make(0.25, 3).k == 2);
    CHECK_THROWS_AS((void)Grid::make(0.3, 40), Error);   // 1/(2h) not an integer
    CHECK_THROWS_AS((void)Grid::make(0.5, 40), Error);   // k = 1 too coarse
    CHECK_THROWS_AS((void)Grid::make(0.05, 0), Error);
    CHECK_THROWS_AS((void)Grid::make(-0.05, 4), Error);
}

TEST_CASE("discontinuous reference profile") {
    const Grid g = Grid::make(0.05, 40);
    const Profile w = shock_profile(g);
    CHECK(w.values[static_cast<std::size_t>(g.center())] == 0.0);
    CHECK(w.values[static_cast<std::size_t>(g.center() - 3)] == -1.0);
    CHECK(w.values[static_cast<std::size_t>(g.center() + 1)] == 1.0);
    CHECK(l2_deviation(w) == 0.0);
}

TEST_CASE("window average of the reference profile") {
    const Grid g = Grid::make(0.05, 40);
    const Profile aw = average(shock_profile(g));
    CHECK(aw.values[static_cast<std::size_t>(g.center())] == doctest::Approx(0.0).epsilon(1e-15));
    // ramp of slope 2 inside the window, constant outside
    CHECK(aw.values[static_cast<std::size_t>(g.center() + 4)] ==
          doctest::Approx(2.0 * 4 * g.h).epsilon(1e-14));
    CHECK(aw.values[static_cast<std::size_t>(g.center() + 3 * g.k)] == 1.0);
    // the node at the window edge sees the sampled kink
    CHECK(aw.values[static_cast<std::size_t>(g.center() + g.k)] ==
          doctest::Approx(1.0 - 0.5 * g.h).epsilon(1e-14));
}

TEST_CASE("average preserves the cone") {
    const Grid g = Grid::make(0.05, 20);
    for (unsigned seed : {3u, 4u, 5u}) {
        const Profile u = random_cone_profile(g, seed);
        const Profile au = average(u);
        CHECK(au.left_limit == -1.0);
        CHECK(au.right_limit == 1.0);
        for (int i = 1; i < g.n; ++i) {
            CHECK(au.values[static_cast<std::size_t>(i)] >=
                  au.values[static_cast<std::size_t>(i - 1)] - 1e-15);
        }
        CHECK(au.values.front() >= -1.0 - 1e-15);
        CHECK(au.values.back() <= 1.0 + 1e-15);
    }
}

TEST_CASE("half-shift difference basics") {
    const Grid g = Grid::make(0.05, 40);
    const Profile w = shock_profile(g);
    const Profile dw = nabla(w);
    CHECK(dw.values[static_cast<std::size_t>(g.center())] == 2.0);
    CHECK(dw.values[static_cast<std::size_t>(g.center() + 4 * g.k)] == 0.0);

    Profile aff;
    aff.grid = g;
    aff.left_limit = -40.0;
    aff.right_limit = 40.0;
    aff.values.resize(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i) aff.values[static_cast<std::size_t>(i)] = g.phi(i);
    const Profile daff = nabla(aff);
    for (int i = g.k; i < g.n - g.k; ++i) {
        CHECK(daff.values[static_cast<std::size_t>(i)] == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("deviation norm of the zero profile") {
    const Grid g = Grid::make(0.05, 40);
    Profile z;
    z.grid = g;
    z.values.assign(static_cast<std::size_t>(g.n), 0.0);
    const double dev = l2_deviation(z);
    CHECK(std::abs(dev - std::sqrt(2.0 * g.M)) <= 2.0 * g.h);
}

TEST_CASE("contraction bounds of the average on compact deviations") {
    const Grid g = Grid::make(0.05, 20);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Profile u;
    u.grid = g;
    u.left_limit = 0.0;
    u.right_limit = 0.0;
    u.values.assign(static_cast<std::size_t>(g.n), 0.0);
    for (int i = 3 * g.k; i < g.n - 3 * g.k; ++i) {
        u.values[static_cast<std::size_t>(i)] = dist(rng);
    }
    const Profile au = average(u);
    CHECK(l2_norm(au) <= l2_norm(u) + 1e-12);
    double sup = 0.0;
    for (double v : au.values) sup = std::max(sup, std::abs(v));
    CHECK(sup <= l2_norm(u) + 5.0 * g.h);
}

TEST_CASE("integral shift identity for monotone profiles") {
    const Grid g = Grid::make(0.05, 20);
    // saturated tanh-like profile: exact limits at the boundary
    Profile u;
    u.grid = g;
    u.values.resize(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i) u.values[static_cast<std::size_t>(i)] = std::tanh(2.0 * g.phi(i));
    for (int shift_nodes : {7, -13, 40}) {
        double sum = 0.0;
        for (int i = 0; i < g.n; ++i) {
            sum += g.h * (u.value_ext(i + shift_nodes) - u.value_ext(i));
        }
        const double expected = (1.0 - (-1.0)) * shift_nodes * g.h;
        CHECK(sum == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("pinning places the sign change at the origin") {
    const Grid g = Grid::make(0.05, 40);
    const Profile w = shock_profile(g);
    SUBCASE("already pinned") {
        const PinResult r = pin(w);
        CHECK(r.shift == 0);
        CHECK(r.profile.values == w.values);
    }
    SUBCASE("a translated profile is pulled back") {
        Profile moved;
        moved.grid = g;
        moved.values.resize(static_cast<std::size_t>(g.n));
        for (int i = 0; i < g.n; ++i) moved.values[static_cast<std::size_t>(i)] = w.value_ext(i - 7);
        const PinResult r = pin(moved);
        CHECK(r.shift == -7);
        CHECK(r.profile.values == w.values);
    }
    SUBCASE("strictly increasing profiles have a unique admissible shift") {
        Profile u;
        u.grid = g;
        u.values.resize(static_cast<std::size_t>(g.n));
        for (int i = 0; i < g.n; ++i) {
            u.values[static_cast<std::size_t>(i)] = std::tanh(0.9 * (g.phi(i) - 3.3));
        }
        const PinResult r = pin(u);
        const int c = g.center();
        CHECK(r.profile.values[static_cast<std::size_t>(c)] <= 0.0);
        CHECK(r.profile.values[static_cast<std::size_t>(c + 1)] > 0.0);
        int admissible = 0;
        for (int j = 0; j + 1 < g.n; ++j) {
            if (u.values[static_cast<std::size_t>(j)] <= 0.0 &&
                u.values[static_cast<std::size_t>(j + 1)] > 0.0) {
                ++admissible;
            }
        }
        CHECK(admissible == 1);
    }
    SUBCASE("profiles without a sign change are rejected") {
        Profile pos;
        pos.grid = g;
        pos.values.assign(static_cast<std::size_t>(g.n), 0.5);
        CHECK_THROWS_AS((void)pin(pos), Error);
    }
}

TEST_CASE("cone projection: clip, pooled flattening, reported correction") {
    const Grid g = Grid::make(0.05, 10);
    SUBCASE("members of the cone pass through untouched") {
        const Profile u = random_cone_profile(g, 9);
        const ConeResult r = enforce_cone(u);
        CHECK(r.max_correction == 0.0);
        CHECK(r.profile.values == u.values);
    }
    SUBCASE("a tiny descent is flattened into the neighbouring pair") {
        Profile u = shock_profile(g);
        const std::size_t c = static_cast<std::size_t>(g.center());
        u.values[c + 5] = u.values[c + 4] - 1e-13;
        const ConeResult r = enforce_cone(u);
        CHECK(r.max_correction <= 1.1e-13);
        for (int i = 1; i < g.n; ++i) {
            CHECK(r.profile.values[static_cast<std::size_t>(i)] >=
                  r.profile.values[static_cast<std::size_t>(i - 1)]);
        }
    }
    SUBCASE("values beyond the limits are clipped") {
        Profile u = shock_profile(g);
        u.values.back() = 1.0 + 1e-15;
        const ConeResult r = enforce_cone(u);
        CHECK(r.profile.values.back() == 1.0);
    }
    SUBCASE("pooled means match a quadratic reference on random violations") {
        std::mt19937 rng(31);
        std::normal_distribution<double> noise(0.0, 0.05);
        Profile u;
        u.grid = g;
        u.values.resize(static_cast<std::size_t>(g.n));
        for (int i = 0; i < g.n; ++i) {
            u.values[static_cast<std::size_t>(i)] =
                std::clamp(std::tanh(0.4 * g.phi(i)) + noise(rng), -1.0, 1.0);
        }
        const ConeResult r = enforce_cone(u);
        // reference: repeatedly merge adjacent decreasing blocks (quadratic)
        std::vector<double> value(u.values.begin(), u.values.end());
        std::vector<int> count(value.size(), 1);
        bool merged = true;
        while (merged) {
            merged = false;
            for (std::size_t b = 0; b + 1 < value.size(); ++b) {
                if (value[b] > value[b + 1]) {
                    const double m = (value[b] * count[b] + value[b + 1] * count[b + 1]) /
                                     (count[b] + count[b + 1]);
                    value[b] = m;
                    count[b] += count[b + 1];
                    value.erase(value.begin() + static_cast<long>(b) + 1);
                    count.erase(count.begin() + static_cast<long>(b) + 1);
                    merged = true;
                    break;
                }
            }
        }
        std::vector<double> expanded;
        for (std::size_t b = 0; b < value.size(); ++b) {
            expanded.insert(expanded.end(), static_cast<std::size_t>(count[b]), value[b]);
        }
        REQUIRE(expanded.size() == r.profile.values.size());
        for (std::size_t i = 0; i < expanded.size(); ++i) {
            CHECK(r.profile.values[i] == doctest::Approx(expanded[i]).epsilon(1e-12));
        }
    }
}
