#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "ballharm/rng.hpp"
#include "ballharm/series.hpp"
#include "ballharm/specfun.hpp"

using namespace ballharm;

namespace {

std::vector<double> random_ball_point(Rng& rng, int n, double r_lo, double r_hi) {
    std::vector<double> v(static_cast<std::size_t>(n));
    double norm2 = 0.0;
    for (double& c : v) {
        c = rng.gaussian();
        norm2 += c * c;
    }
    const double r = rng.uniform(r_lo, r_hi) / std::sqrt(norm2);
    for (double& c : v)
        c *= r;
    return v;
}

} // namespace

TEST_CASE("coefficient schedules: values, support, tails") {
    auto inv = CoefficientSchedule::dyadic_inverse_square();
    CHECK(inv.coefficient(2) == doctest::Approx(1.0));
    CHECK(inv.coefficient(4) == doctest::Approx(0.25));
    CHECK(inv.coefficient(8) == doctest::Approx(1.0 / 9.0));
    CHECK(inv.coefficient(3) == 0.0);
    CHECK(inv.coefficient(1) == 0.0);
    CHECK(inv.support(16) == std::vector<int>{2, 4, 8, 16});

    auto hol = CoefficientSchedule::dyadic_holder(0.5);
    CHECK(hol.coefficient(8) == doctest::Approx(std::pow(2.0, -1.5)));
    CHECK_THROWS(CoefficientSchedule::dyadic_holder(1.0));

    auto had = CoefficientSchedule::hadamard();
    CHECK(had.coefficient(4) == doctest::Approx(0.5));
    CHECK(had.coefficient(16) == doctest::Approx(0.25));
    CHECK(had.coefficient(8) == 0.0);
    CHECK(had.support(256) == std::vector<int>{4, 16, 64, 256});

    // tail bounds dominate a long partial remainder
    for (int K : {4, 16, 64}) {
        double rem = 0.0;
        for (int j = 1; j < 40; ++j) {
            const double k = std::pow(2.0, j);
            if (k > K)
                rem += 1.0 / (static_cast<double>(j) * j);
        }
        CHECK(inv.tail_abs(K) >= rem - 1e-15);
        CHECK(inv.tail_abs(K) <= 2.0 * rem + 1e-15);
    }

    auto cus = CoefficientSchedule::custom({{3, 0.5}, {1, -1.0}});
    CHECK(cus.coefficient(1) == doctest::Approx(-1.0));
    CHECK(cus.coefficient(3) == doctest::Approx(0.5));
    CHECK(cus.tail_abs(3) == 0.0);
    CHECK_THROWS(CoefficientSchedule::custom({{1, 1.0}, {1, 2.0}}));
    CHECK_THROWS(CoefficientSchedule::custom({{-1, 1.0}}));
}

TEST_CASE("series evaluation matches a direct complex-power oracle") {
    auto u = build_series(BallSeries::Variant::notCbeta, 3, 64);
    Rng rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        const auto x = random_ball_point(rng, 3, 0.05, 0.99);
        const std::complex<double> z(x[0], x[1]);
        double oracle = 0.0;
        for (int j = 1; (1 << j) <= 64; ++j)
            oracle += std::pow(z, 1 << j).real() / (static_cast<double>(j) * j);
        CHECK(u.eval(x).value == doctest::Approx(oracle).epsilon(1e-13));
    }
}

TEST_CASE("tail bounds are sound against longer truncations") {
    auto u16 = build_series(BallSeries::Variant::notCbeta, 2, 16);
    auto u4k = build_series(BallSeries::Variant::notCbeta, 2, 4096);
    Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const auto x = random_ball_point(rng, 2, 0.0, 0.99);
        const auto r16 = u16.eval(x);
        const auto r4k = u4k.eval(x);
        CHECK(std::abs(r16.value - r4k.value) <= r16.tail_bound + 1e-15);
    }
    // interior sharpening: deep inside, the tail shrinks by r^{k_next}
    std::vector<double> deep{0.1, 0.05};
    CHECK(u16.eval(deep).tail_bound < 1e-30);
    CHECK(u16.eval(deep).tail_bound <= u16.tail_sup_bound());
}

TEST_CASE("kelvin transform: trace agreement and exterior decay") {
    auto u = build_series(BallSeries::Variant::anyn_holder, 3, 32, 1.0, 0, 0.4);
    auto uk = kelvin_transform(u);
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        auto x = random_ball_point(rng, 3, 1.0, 1.0);
        CHECK(std::abs(u.boundary_eval(x) - uk.boundary_eval(x)) < 1e-12);
    }
    CHECK_THROWS(kelvin_transform(uk));
    // r^{2-n-k} decay against a manual oracle for a single custom mode
    auto mode = build_series(BallSeries::Variant::custom, 3, 5, 1.0, 0, 0.0,
                             {{5, 1.0}});
    auto modek = kelvin_transform(mode);
    std::vector<double> y{1.3, 0.0, 0.0};
    CHECK(modek.eval(y).value ==
          doctest::Approx(std::pow(1.3, 2.0 - 3.0 - 5.0)).epsilon(1e-13));
    // radial domain checks
    std::vector<double> inside{0.5, 0.0, 0.0};
    CHECK_THROWS((void)modek.eval(inside));
    std::vector<double> outside{1.5, 0.0, 0.0};
    CHECK_THROWS((void)mode.eval(outside));
}

TEST_CASE("scaling is exact and preserves structure") {
    auto u = build_series(BallSeries::Variant::notCbeta, 2, 32, 0.7);
    auto v = u.scaled(-3.0);
    std::vector<double> x{0.4, 0.3};
    CHECK(v.eval(x).value == doctest::Approx(-3.0 * u.eval(x).value).epsilon(1e-15));
    CHECK(v.tail_sup_bound() == doctest::Approx(3.0 * u.tail_sup_bound()));
    CHECK(v.scale() == doctest::Approx(-2.1));
}

TEST_CASE("series construction guards") {
    CHECK_THROWS(build_series(BallSeries::Variant::hadamard_2d, 3, 16));
    CHECK_THROWS(build_series(BallSeries::Variant::anyn_holder, 3, 16, 1.0, 0, 1.5));
    CHECK_THROWS(build_series(BallSeries::Variant::notHs, 3, 4096));
    CHECK_THROWS(build_series(BallSeries::Variant::notHs, 4, 64));
}

TEST_CASE("random series are reproducible and json round-trips") {
    auto u = build_series(BallSeries::Variant::notHs, 3, 32, 0.7, 42);
    auto v = build_series(BallSeries::Variant::notHs, 3, 32, 0.7, 42);
    auto w = BallSeries::from_json(u.to_json());
    auto wk = BallSeries::from_json(kelvin_transform(u).to_json());
    Rng rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        const auto x = random_ball_point(rng, 3, 0.1, 0.95);
        CHECK(u.eval(x).value == v.eval(x).value);
        CHECK(u.eval(x).value == doctest::Approx(w.eval(x).value).epsilon(1e-15));
    }
    std::vector<double> y{0.0, 1.2, 0.9};
    CHECK(kelvin_transform(u).eval(y).value ==
          doctest::Approx(wk.eval(y).value).epsilon(1e-15));
    CHECK(w.tail_sup_bound() == doctest::Approx(u.tail_sup_bound()).epsilon(1e-15));
    CHECK(w.seed() == u.seed());
    CHECK(w.variant() == BallSeries::Variant::notHs);
}

TEST_CASE("finite-difference harmonicity of every variant") {
    Rng rng(9);
    std::vector<std::vector<double>> pts2, pts3;
    for (int i = 0; i < 20; ++i) {
        pts2.push_back(random_ball_point(rng, 2, 0.1, 0.9));
        pts3.push_back(random_ball_point(rng, 3, 0.1, 0.9));
    }
    CHECK(check_harmonic_fd(build_series(BallSeries::Variant::notCbeta, 3, 16), pts3) < 1e-4);
    CHECK(check_harmonic_fd(build_series(BallSeries::Variant::anyn_holder, 3, 16, 1.0, 0, 0.5), pts3) < 1e-4);
    CHECK(check_harmonic_fd(build_series(BallSeries::Variant::notHs, 3, 16, 1.0, 3), pts3) < 1e-4);
    CHECK(check_harmonic_fd(build_series(BallSeries::Variant::hadamard_2d, 2, 16), pts2) < 1e-4);
    // non-harmonic control: |x|^2 has Laplacian 2n
    const double resid = check_harmonic_fd(
        [](std::span<const double> x) {
            return x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        },
        3, pts3);
    CHECK(resid == doctest::Approx(6.0).epsilon(1e-6));
}

TEST_CASE("mean value property holds on interior spheres") {
    auto u = build_series(BallSeries::Variant::notCbeta, 3, 32);
    auto rule = build_sphere_quadrature(3, 40, QuadratureMode::product);
    std::vector<double> c{0.2, -0.1, 0.3};
    CHECK(mean_value_check(u, c, 0.25, rule) < 1e-10);
    CHECK_THROWS((void)mean_value_check(u, c, 0.9, rule)); // sphere leaves the ball
}
