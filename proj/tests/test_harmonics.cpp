#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "ballharm/harmonics.hpp"
#include "ballharm/rng.hpp"
#include "ballharm/specfun.hpp"

using namespace ballharm;

TEST_CASE("harmonic dimensions against independent closed forms") {
    // n = 2: two dimensions (cos, sin) for every k >= 1
    CHECK(harmonic_dimension(2, 0) == 1);
    for (int k = 1; k <= 40; ++k)
        CHECK(harmonic_dimension(2, k) == 2);
    // n = 3: 2k + 1
    for (int k = 0; k <= 40; ++k)
        CHECK(harmonic_dimension(3, k) == 2 * k + 1);
    // n = 4: (k + 1)^2
    for (int k = 0; k <= 40; ++k)
        CHECK(harmonic_dimension(4, k) == static_cast<std::int64_t>(k + 1) * (k + 1));
    CHECK(harmonic_dimension(3, 2) == 5);
    CHECK_THROWS_AS((void)harmonic_dimension(40, 2000000000), std::overflow_error);
}

TEST_CASE("laplace-beltrami eigenvalues") {
    // k(k+n-2) on S^{n-1}: the classical l(l+1) sequence for n = 3
    CHECK(laplace_beltrami_eigenvalue(3, 2) == doctest::Approx(6.0));
    CHECK(laplace_beltrami_eigenvalue(2, 5) == doctest::Approx(25.0));
    CHECK(laplace_beltrami_eigenvalue(4, 1) == doctest::Approx(3.0));
}

TEST_CASE("highest-weight harmonic matches a direct complex-power oracle") {
    Rng rng(11);
    for (int n : {2, 3, 5}) {
        for (int k : {1, 2, 7, 31}) {
            auto q = HarmonicFunction::highest_weight(n, k);
            for (int trial = 0; trial < 20; ++trial) {
                std::vector<double> v(static_cast<std::size_t>(n));
                double norm2 = 0.0;
                for (double& c : v) {
                    c = rng.gaussian();
                    norm2 += c * c;
                }
                for (double& c : v)
                    c /= std::sqrt(norm2);
                const std::complex<double> z(v[0], v[1]);
                const double oracle = std::pow(z, k).real();
                CHECK(q.eval(v) == doctest::Approx(oracle).epsilon(1e-12));
                CHECK(std::abs(q.eval(v)) <= 1.0 + 1e-12);
            }
        }
    }
}

TEST_CASE("highest-weight L2 norm matches quadrature") {
    for (int n : {2, 3}) {
        auto rule = build_sphere_quadrature(n, 70, QuadratureMode::product);
        for (int k : {1, 2, 5, 16, 33}) {
            auto q = HarmonicFunction::highest_weight(n, k);
            double s = 0.0;
            for (std::size_t i = 0; i < rule.size(); ++i) {
                const double v = q.eval(rule.node(i));
                s += rule.weights[i] * v * v;
            }
            CHECK(std::sqrt(s) == doctest::Approx(q.l2_norm()).epsilon(1e-10));
            CHECK(std::sqrt(s) ==
                  doctest::Approx(highest_weight_l2_norm(n, k)).epsilon(1e-10));
        }
    }
}

TEST_CASE("gegenbauer values at the endpoint and low degrees") {
    // C_k^lambda(1) = Gamma(k + 2 lambda) / (k! Gamma(2 lambda))
    for (double lambda : {0.5, 1.0, 2.5}) {
        for (int k : {0, 1, 2, 5, 12}) {
            const double oracle = std::exp(log_gamma(k + 2.0 * lambda) -
                                           log_gamma(k + 1.0) -
                                           log_gamma(2.0 * lambda));
            CHECK(gegenbauer(k, lambda, 1.0) == doctest::Approx(oracle).epsilon(1e-12));
        }
    }
    // C_2^1(x) = 4x^2 - 1
    CHECK(gegenbauer(2, 1.0, 0.3) == doctest::Approx(4 * 0.09 - 1).epsilon(1e-14));
    CHECK_THROWS((void)gegenbauer(1 << 15, 0.5, 0.2));
}

TEST_CASE("zonal harmonics are L2-normalized and rotation-invariant") {
    auto rule = build_sphere_quadrature(3, 24, QuadratureMode::product);
    for (int k : {0, 1, 3, 8}) {
        auto z = HarmonicFunction::zonal(3, k, SpherePoint({0.0, 0.0, 1.0}));
        double s = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i) {
            const double v = z.eval(rule.node(i));
            s += rule.weights[i] * v * v;
        }
        CHECK(s == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(z.l2_norm() == doctest::Approx(1.0));
    }
    // value depends only on the angle to the pole
    auto z = HarmonicFunction::zonal(3, 5, SpherePoint({1.0, 0.0, 0.0}));
    const double c = 0.4, sq = std::sqrt(1.0 - c * c);
    std::vector<double> p1{c, sq, 0.0}, p2{c, 0.0, -sq},
        p3{c, sq * 0.6, sq * 0.8};
    CHECK(z.eval(p1) == doctest::Approx(z.eval(p2)).epsilon(1e-13));
    CHECK(z.eval(p1) == doctest::Approx(z.eval(p3)).epsilon(1e-13));
    // n = 2 zonal reduces to cos(k angle)/sqrt(pi)
    auto z2 = HarmonicFunction::zonal(2, 3, SpherePoint({1.0, 0.0}));
    const double t = 0.77;
    std::vector<double> q{std::cos(t), std::sin(t)};
    CHECK(z2.eval(q) == doctest::Approx(std::cos(3 * t) / std::sqrt(kPi)).epsilon(1e-13));
}

TEST_CASE("orthonormal basis gram matrix") {
    auto rule = build_sphere_quadrature(3, 16, QuadratureMode::product);
    std::vector<HarmonicFunction> all;
    for (int k = 0; k <= 6; ++k)
        for (auto& y : orthonormal_basis(3, k))
            all.push_back(y);
    std::vector<std::vector<double>> vals(all.size());
    for (std::size_t a = 0; a < all.size(); ++a) {
        vals[a].resize(rule.size());
        for (std::size_t i = 0; i < rule.size(); ++i)
            vals[a][i] = all[a].eval(rule.node(i));
    }
    double worst = 0.0;
    for (std::size_t a = 0; a < all.size(); ++a)
        for (std::size_t b = a; b < all.size(); ++b) {
            double ip = 0.0;
            for (std::size_t i = 0; i < rule.size(); ++i)
                ip += rule.weights[i] * vals[a][i] * vals[b][i];
            worst = std::max(worst, std::abs(ip - (a == b ? 1.0 : 0.0)));
        }
    CHECK(worst < 1e-10);
}

TEST_CASE("n=2 basis elements are the normalized trigonometric pair") {
    auto b = orthonormal_basis(2, 4);
    REQUIRE(b.size() == 2);
    const double t = 1.234;
    std::vector<double> p{std::cos(t), std::sin(t)};
    CHECK(b[0].eval(p) == doctest::Approx(std::cos(4 * t) / std::sqrt(kPi)).epsilon(1e-13));
    CHECK(b[1].eval(p) == doctest::Approx(std::sin(4 * t) / std::sqrt(kPi)).epsilon(1e-13));
}

TEST_CASE("random unit harmonics are deterministic with unit L2 norm") {
    auto y1 = HarmonicFunction::random_unit(3, 12, 99);
    auto y2 = HarmonicFunction::random_unit(3, 12, 99);
    auto y3 = HarmonicFunction::random_unit(3, 12, 100);
    std::vector<double> p{0.48, -0.6, 0.64};
    for (double& v : p)
        v /= std::hypot(0.48, -0.6, 0.64);
    CHECK(y1.eval(p) == y2.eval(p));
    CHECK(y1.eval(p) != y3.eval(p));
    double c2 = 0.0;
    for (double c : y1.coefficients())
        c2 += c * c;
    CHECK(c2 == doctest::Approx(1.0).epsilon(1e-14));
    auto rule = build_sphere_quadrature(3, 26, QuadratureMode::product);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double v = y1.eval(rule.node(i));
        s += rule.weights[i] * v * v;
    }
    CHECK(s == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("sup-norm estimates stay below the rigorous bounds") {
    for (int k : {1, 4, 16}) {
        auto q = HarmonicFunction::highest_weight(3, k);
        const double est = estimate_sup_norm(q, 4096);
        CHECK(est <= q.sup_norm_bound() + 1e-12);
        CHECK(est == doctest::Approx(1.0).epsilon(1e-3)); // |Q_k| attains 1
    }
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        auto y = HarmonicFunction::random_unit(3, 24, seed);
        const double est = estimate_sup_norm(y, 1 << 14);
        CHECK(est <= y.sup_norm_bound() + 1e-12);
        CHECK(est > 0.0);
    }
    // the shared grid matches the one-off estimate for coefficient kinds
    auto y = HarmonicFunction::random_unit(3, 16, 5);
    SupNormGrid grid(16, 64, 128);
    const double direct = grid.estimate(y.coefficients());
    CHECK(direct <= y.sup_norm_bound() + 1e-12);
    CHECK(direct > 0.5 * estimate_sup_norm(y, 1 << 13));
}

TEST_CASE("zonal sup bound is attained at the pole") {
    auto z = HarmonicFunction::zonal(3, 7, SpherePoint({0.0, 1.0, 0.0}));
    std::vector<double> pole{0.0, 1.0, 0.0};
    CHECK(z.eval(pole) == doctest::Approx(z.sup_norm_bound()).epsilon(1e-12));
}
