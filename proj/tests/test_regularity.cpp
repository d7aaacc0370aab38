#include <doctest.h>

#include <cmath>
#include <vector>

#include "ballharm/regularity.hpp"
#include "ballharm/specfun.hpp"

using namespace ballharm;

TEST_CASE("spectral coefficients recover known custom series") {
    // n = 2: trace is 0.3 cos t - 0.2 cos 3t; degree powers are a_k^2 pi
    auto u2 = build_series(BallSeries::Variant::custom, 2, 3, 1.0, 0, 0.0,
                           {{1, 0.3}, {3, -0.2}});
    auto rule2 = build_sphere_quadrature(2, 16, QuadratureMode::product);
    auto sc2 = spectral_coefficients(
        [&u2](std::span<const double> t) { return u2.boundary_eval(t); }, 2, 3,
        rule2);
    CHECK(sc2.degree_power(0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(sc2.degree_power(1) == doctest::Approx(0.09 * kPi).epsilon(1e-12));
    CHECK(sc2.degree_power(2) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(sc2.degree_power(3) == doctest::Approx(0.04 * kPi).epsilon(1e-12));

    // n = 3: degree power of a_k Q_k is a_k^2 ||Q_k||_2^2
    auto u3 = build_series(BallSeries::Variant::custom, 3, 4, 1.0, 0, 0.0,
                           {{2, 0.5}, {4, 1.5}});
    auto rule3 = build_sphere_quadrature(3, 12, QuadratureMode::product);
    auto sc3 = spectral_coefficients(
        [&u3](std::span<const double> t) { return u3.boundary_eval(t); }, 3, 4,
        rule3);
    const double n2 = highest_weight_l2_norm(3, 2), n4 = highest_weight_l2_norm(3, 4);
    CHECK(sc3.degree_power(2) == doctest::Approx(0.25 * n2 * n2).epsilon(1e-10));
    CHECK(sc3.degree_power(4) == doctest::Approx(2.25 * n4 * n4).epsilon(1e-10));
    CHECK(sc3.degree_power(3) == doctest::Approx(0.0).epsilon(1e-10));

    // aliasing guard: exactness below 2K is refused
    auto low = build_sphere_quadrature(3, 6, QuadratureMode::product);
    CHECK_THROWS((void)spectral_coefficients(
        [&u3](std::span<const double> t) { return u3.boundary_eval(t); }, 3, 4, low));
}

TEST_CASE("sobolev partial sums match a direct oracle and are monotone") {
    auto u = build_series(BallSeries::Variant::notCbeta, 3, 1 << 12);
    const double sigma = 0.3;
    double oracle = 0.0;
    double prev = 0.0;
    for (int j = 1; j <= 12; ++j) {
        const double k = std::pow(2.0, j);
        const double l2 = highest_weight_l2_norm(3, 1 << j);
        const double mu = k * (k + 1.0);
        oracle += std::pow(mu, sigma) * std::pow(1.0 / (static_cast<double>(j) * j), 2.0) * l2 * l2;
        const double s = sobolev_partial_sum(u, sigma, 1 << j);
        CHECK(s == doctest::Approx(oracle).epsilon(1e-12));
        CHECK(s >= prev);
        prev = s;
    }
}

TEST_CASE("sobolev classifier: divergent above the threshold, convergent below") {
    auto u = build_series(BallSeries::Variant::notCbeta, 3, 1 << 20);
    std::vector<double> sigmas{0.15, 0.35};
    auto scans = classify_sobolev(u, sigmas, 1 << 20);
    REQUIRE(scans.size() == 2);
    CHECK(scans[0].verdict == SobolevScan::Verdict::convergent);
    CHECK(scans[1].verdict == SobolevScan::Verdict::divergent);
    CHECK(scans[1].r_squared >= 0.99);
    // fitted exponent tracks 2(sigma - 1/4)
    CHECK(scans[1].fitted_exponent == doctest::Approx(0.2).epsilon(0.05));
}

TEST_CASE("sobolev classifier limit estimate for a convergent scan") {
    auto u = build_series(BallSeries::Variant::notHs, 2, 1 << 20, 1.0, 7);
    std::vector<double> sigmas{0.0};
    auto scans = classify_sobolev(u, sigmas, 1 << 20);
    REQUIRE(scans.size() == 1);
    CHECK(scans[0].verdict == SobolevScan::Verdict::convergent);
    // sum_j j^{-4} = pi^4 / 90 (unit-norm random harmonics)
    CHECK(scans[0].limit_estimate ==
          doctest::Approx(std::pow(kPi, 4) / 90.0).epsilon(1e-6));
}

TEST_CASE("dirichlet energy: formula identity and quadrature agreement") {
    auto u = build_series(BallSeries::Variant::hadamard_2d, 2, 64);
    // pi sum k a_k^2 = pi (4/4 + 16/16 + 64/64) = 3 pi
    const double ef = dirichlet_energy_2d(u, 64, EnergyMode::formula);
    CHECK(ef == doctest::Approx(3.0 * kPi).epsilon(1e-14));
    const double eq = dirichlet_energy_2d(u, 64, EnergyMode::quadrature);
    CHECK(eq == doctest::Approx(ef).epsilon(1e-6));
    // truncation level K restricts the retained terms
    CHECK(dirichlet_energy_2d(u, 16, EnergyMode::formula) ==
          doctest::Approx(2.0 * kPi).epsilon(1e-14));
    auto u3 = build_series(BallSeries::Variant::notCbeta, 3, 16);
    CHECK_THROWS((void)dirichlet_energy_2d(u3, 16, EnergyMode::formula));
}

TEST_CASE("holder modulus of a smooth function fits slope one") {
    std::vector<double> scales;
    for (int j = 14; j >= 4; --j)
        scales.push_back(std::pow(2.0, -j));
    auto table = holder_modulus([](double t) { return std::cos(t); }, scales,
                                20000, 3);
    CHECK(table.fitted_alpha == doctest::Approx(1.0).epsilon(0.02));
    // omega is a running maximum: non-decreasing in delta
    for (std::size_t i = 1; i < table.omega.size(); ++i)
        CHECK(table.omega[i] >= table.omega[i - 1]);
    const std::string csv = table.to_csv();
    CHECK(csv.rfind("delta,omega", 0) == 0);
}

TEST_CASE("fourier certificate recovers lacunary coefficients") {
    const int N = 1 << 14;
    std::vector<double> samples(N);
    for (int i = 0; i < N; ++i) {
        const double t = 2.0 * kPi * i / N;
        double v = 0.0;
        for (int j = 0; j <= 12; ++j)
            v += std::pow(2.0, -0.5 * j) * std::cos((1 << j) * t);
        samples[static_cast<std::size_t>(i)] = v;
    }
    auto cert = fourier_decay_certificate(samples, 0.5);
    for (int j = 0; j <= 8; ++j)
        CHECK(cert.coeff_abs[static_cast<std::size_t>(1 << j)] ==
              doctest::Approx(std::pow(2.0, -0.5 * j)).epsilon(1e-9));
    // the 2^{-k/2} decay exactly matches alpha = 1/2: no growth
    CHECK_FALSE(cert.growing);
    // but testing a stricter alpha shows growth of the window constants
    auto strict = fourier_decay_certificate(samples, 0.9);
    CHECK(strict.growing);
}
