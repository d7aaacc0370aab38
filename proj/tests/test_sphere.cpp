#include <doctest.h>

#include <cmath>

#include "ballharm/rng.hpp"
#include "ballharm/specfun.hpp"
#include "ballharm/sphere.hpp"

using namespace ballharm;

TEST_CASE("sphere point normalization") {
    SpherePoint p({3.0, 4.0});
    CHECK(p[0] == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(p[1] == doctest::Approx(0.8).epsilon(1e-15));
    CHECK_THROWS(SpherePoint({0.0, 0.0}));
}

TEST_CASE("product rules integrate constants and moments") {
    for (int n : {2, 3}) {
        auto rule = build_sphere_quadrature(n, 12, QuadratureMode::product);
        double mass = 0.0, moment = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i) {
            mass += rule.weights[i];
            const double x1 = rule.node(i)[0];
            moment += rule.weights[i] * x1 * x1;
        }
        CHECK(mass == doctest::Approx(sphere_surface_area(n)).epsilon(1e-13));
        // by symmetry the x1^2 moment is |S^{n-1}|/n
        CHECK(moment == doctest::Approx(sphere_surface_area(n) / n).epsilon(1e-13));
    }
}

TEST_CASE("monte carlo integrates the surface area by construction") {
    auto rule = build_sphere_quadrature(5, 4000, QuadratureMode::monte_carlo, 3);
    double mass = 0.0, moment = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        mass += rule.weights[i];
        const double x1 = rule.node(i)[0];
        moment += rule.weights[i] * x1 * x1;
    }
    CHECK(mass == doctest::Approx(sphere_surface_area(5)).epsilon(1e-13));
    CHECK(moment == doctest::Approx(sphere_surface_area(5) / 5).epsilon(0.1));
}

TEST_CASE("ball rule reproduces volume and radial moments") {
    auto angular = build_sphere_quadrature(3, 8, QuadratureMode::product);
    auto ball = build_annulus_rule(3, 0.0, 1.0, 12, angular);
    const double vol = ball.integrate([](std::span<const double>) { return 1.0; });
    CHECK(vol == doctest::Approx(unit_ball_volume(3)).epsilon(1e-12));
    // integral of |x|^4 over the unit ball in R^3 = 4 pi / 7
    const double m4 = ball.integrate([](std::span<const double> x) {
        const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        return r2 * r2;
    });
    CHECK(m4 == doctest::Approx(4.0 * kPi / 7.0).epsilon(1e-12));
}

TEST_CASE("graded annulus rule agrees with the plain rule") {
    auto angular = build_sphere_quadrature(2, 16, QuadratureMode::product);
    auto plain = build_annulus_rule(2, 1.0, 2.0, 40, angular);
    auto graded = build_annulus_rule_graded(2, 1.0, 2.0, 1.0, 64.0, 24, angular);
    auto f = [](std::span<const double> x) {
        const double r = std::hypot(x[0], x[1]);
        return std::pow(r, -6.0) * (1.0 + x[0] / r);
    };
    CHECK(plain.integrate(f) == doctest::Approx(graded.integrate(f)).epsilon(1e-10));
    // radial nodes are sorted ascending (required by support clipping)
    for (std::size_t i = 1; i < graded.radial_nodes.size(); ++i)
        CHECK(graded.radial_nodes[i] > graded.radial_nodes[i - 1]);
}

TEST_CASE("rng determinism and distribution sanity") {
    Rng a(123), b(123);
    for (int i = 0; i < 10; ++i)
        CHECK(a.next_u64() == b.next_u64());
    Rng g(7);
    double mean = 0.0;
    const int N = 20000;
    for (int i = 0; i < N; ++i)
        mean += g.gaussian();
    CHECK(std::abs(mean / N) < 0.03);
    CHECK(Rng::derive_seed(1, 0) != Rng::derive_seed(1, 1));
}
