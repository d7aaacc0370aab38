// Acceptance harness: prints one line per criterion (PASS/FAIL, with the
// measured quantity and its pinned tolerance) and exits nonzero if any hard
// criterion fails.  Criterion 13 is report-only.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "ballharm/harmonics.hpp"
#include "ballharm/regularity.hpp"
#include "ballharm/rng.hpp"
#include "ballharm/series.hpp"
#include "ballharm/specfun.hpp"
#include "ballharm/transmission.hpp"
#include "ballharm/weierstrass.hpp"

using namespace ballharm;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
    std::printf("criterion %2d: %s  %s\n", id, pass ? "PASS" : "FAIL",
                detail.c_str());
    std::fflush(stdout);
    if (!pass)
        ++failures;
}

std::vector<double> random_theta(Rng& rng, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    double n2 = 0.0;
    for (double& c : v) {
        c = rng.gaussian();
        n2 += c * c;
    }
    for (double& c : v)
        c /= std::sqrt(n2);
    return v;
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// ---- 1: lacunary disk energy, formula = pi J exactly, quadrature agrees ----
void criterion1() {
    double worst_formula = 0.0;
    for (int J = 1; J <= 6; ++J) {
        const int K = 1 << (2 * J);
        auto u = build_series(BallSeries::Variant::hadamard_2d, 2, K);
        const double ef = dirichlet_energy_2d(u, K, EnergyMode::formula);
        worst_formula = std::max(worst_formula,
                                 std::abs(ef - kPi * J) / (kPi * J));
    }
    auto u4 = build_series(BallSeries::Variant::hadamard_2d, 2, 256);
    const double ef = dirichlet_energy_2d(u4, 256, EnergyMode::formula);
    const double eq = dirichlet_energy_2d(u4, 256, EnergyMode::quadrature);
    const double quad_rel = std::abs(eq - ef) / ef;
    report(1, worst_formula <= 1e-12 && quad_rel <= 1e-6,
           "energy pi*J: formula rel err " + num(worst_formula) +
               " (tol 1e-12); J=4 quadrature rel err " + num(quad_rel) +
               " (tol 1e-6)");
}

// ---- 2: convergent Sobolev sum -> pi^4/90 ----
void criterion2() {
    auto u = build_series(BallSeries::Variant::notHs, 2, 1 << 20, 1.0, 7);
    std::vector<double> sigmas{0.0};
    auto scans = classify_sobolev(u, sigmas, 1 << 20);
    const double target = std::pow(kPi, 4) / 90.0;
    const double err = std::abs(scans[0].limit_estimate - target);
    report(2,
           scans[0].verdict == SobolevScan::Verdict::convergent && err <= 1e-6,
           "S_K(0) limit " + num(scans[0].limit_estimate) + " vs pi^4/90, err " +
               num(err) + " (tol 1e-6)");
}

// ---- 3: divergent Sobolev blocks at sigma = 0.35, convergent at 0.15 ----
void criterion3() {
    auto u = build_series(BallSeries::Variant::notCbeta, 3, 1 << 20);
    std::vector<double> sigmas{0.35, 0.15};
    auto scans = classify_sobolev(u, sigmas, 1 << 20);
    const auto& dv = scans[0];
    const double target = std::pow(2.0, 0.2);
    double worst = 0.0;
    for (const auto& b : dv.blocks)
        if (b.j >= 10 && b.j <= 20 && std::isfinite(b.compensated_ratio))
            worst = std::max(worst, std::abs(b.compensated_ratio / target - 1.0));
    const bool ok = worst <= 0.02 &&
                    dv.verdict == SobolevScan::Verdict::divergent &&
                    dv.r_squared >= 0.99 &&
                    scans[1].verdict == SobolevScan::Verdict::convergent;
    report(3, ok,
           "block ratio vs 2^0.2 off by " + num(worst) +
               " (tol 0.02), R^2 " + num(dv.r_squared) +
               ", verdicts divergent/convergent");
}

// ---- 4: highest-weight norms, closed form vs quadrature ----
void criterion4() {
    double worst = 0.0;
    for (int n : {2, 3}) {
        auto rule = build_sphere_quadrature(n, 130, QuadratureMode::product);
        for (int k = 1; k <= 64; ++k) {
            auto q = HarmonicFunction::highest_weight(n, k);
            double s = 0.0;
            for (std::size_t i = 0; i < rule.size(); ++i) {
                const double v = q.eval(rule.node(i));
                s += rule.weights[i] * v * v;
            }
            const double closed = highest_weight_l2_norm(n, k);
            worst = std::max(worst, std::abs(std::sqrt(s) - closed) / closed);
        }
    }
    report(4, worst <= 1e-8,
           "||Q_k||_2 closed vs quadrature, worst rel err " + num(worst) +
               " (tol 1e-8)");
}

// ---- 5: orthonormal basis Gram matrix, n = 3, degrees <= 10 ----
void criterion5() {
    auto rule = build_sphere_quadrature(3, 24, QuadratureMode::product);
    std::vector<HarmonicFunction> all;
    for (int k = 0; k <= 10; ++k)
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
    report(5, worst <= 1e-8,
           "Gram deviation over " + std::to_string(all.size()) +
               " basis functions: " + num(worst) + " (tol 1e-8)");
}

// ---- 6: finite-difference harmonicity of every variant ----
void criterion6() {
    Rng rng(0xFD);
    std::vector<std::vector<double>> pts2, pts3;
    for (int i = 0; i < 50; ++i) {
        auto t2 = random_theta(rng, 2), t3 = random_theta(rng, 3);
        const double r = rng.uniform(0.1, 0.9);
        for (double& v : t2)
            v *= r;
        for (double& v : t3)
            v *= r;
        pts2.push_back(t2);
        pts3.push_back(t3);
    }
    double worst = 0.0;
    worst = std::max(worst, check_harmonic_fd(
                                build_series(BallSeries::Variant::notHs, 3, 16, 1.0, 2), pts3));
    worst = std::max(worst, check_harmonic_fd(
                                build_series(BallSeries::Variant::notCbeta, 3, 16), pts3));
    worst = std::max(worst, check_harmonic_fd(
                                build_series(BallSeries::Variant::notCbeta, 2, 16), pts2));
    worst = std::max(worst,
                     check_harmonic_fd(build_series(BallSeries::Variant::anyn_holder,
                                                    3, 16, 1.0, 0, 0.5),
                                       pts3));
    worst = std::max(worst, check_harmonic_fd(
                                build_series(BallSeries::Variant::hadamard_2d, 2, 16), pts2));
    report(6, worst <= 1e-4,
           "FD Laplacian residual over all variants, k <= 16: " + num(worst) +
               " (tol 1e-4)");
}

// ---- 7: weierstrass-law Holder slopes and explicit constant ----
void criterion7() {
    std::vector<double> scales;
    for (int j = 16; j >= 4; --j)
        scales.push_back(std::pow(2.0, -j));
    bool ok = true;
    std::string detail;
    for (double alpha : {0.3, 0.5, 0.7}) {
        auto w = LacunaryCosineSeries::weierstrass(2, alpha);
        auto table = holder_modulus(
            [&w](double t) { return w.eval(t).value; }, scales, 100000, 7);
        double ratio_sup = 0.0;
        for (std::size_t i = 0; i < table.delta.size(); ++i)
            ratio_sup = std::max(ratio_sup,
                                 table.omega[i] / std::pow(table.delta[i], alpha));
        const double C = holder_bound_constant(2, alpha);
        ok = ok && std::abs(table.fitted_alpha - alpha) <= 0.05 && ratio_sup <= C;
        detail += "alpha " + num(alpha) + ": slope " + num(table.fitted_alpha) +
                  ", ratio sup " + num(ratio_sup) + " <= C " + num(C) + "; ";
    }
    report(7, ok, detail + "(slope tol 0.05)");
}

// ---- 8: hardy non-Holder evidence ----
void criterion8() {
    std::vector<double> scales;
    for (int j = 16; j >= 4; --j)
        scales.push_back(std::pow(2.0, -j));
    auto hd = LacunaryCosineSeries::hardy(2);
    auto table = holder_modulus([&hd](double t) { return hd.eval(t).value; },
                                scales, 100000, 7);
    const int N = 1 << 18;
    std::vector<double> samples(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i)
        samples[static_cast<std::size_t>(i)] = hd.eval(2.0 * kPi * i / N).value;
    bool growing_all = true;
    for (double a : {0.05, 0.1, 0.2})
        growing_all = growing_all && fourier_decay_certificate(samples, a).growing;
    report(8, table.fitted_alpha <= 0.15 && growing_all,
           "hardy modulus slope " + num(table.fitted_alpha) +
               " (tol 0.15); decay constants grow for alpha 0.05/0.1/0.2: " +
               (growing_all ? "yes" : "no"));
}

// ---- 9: DFT coefficient recovery ----
void criterion9() {
    auto w = LacunaryCosineSeries::weierstrass(2, 0.5);
    const int N = 1 << 18;
    std::vector<double> samples(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i)
        samples[static_cast<std::size_t>(i)] = w.eval(2.0 * kPi * i / N).value;
    auto cert = fourier_decay_certificate(samples, 0.5);
    double worst = 0.0;
    for (int j = 0; j <= 12; ++j)
        worst = std::max(worst,
                         std::abs(cert.coeff_abs[static_cast<std::size_t>(1 << j)] -
                                  std::pow(2.0, -0.5 * j)));
    report(9, worst <= 1e-6,
           "recovered c_{2^j} vs 2^{-j/2}, worst abs err " + num(worst) +
               " (tol 1e-6, j <= 12)");
}

double pairing_residual(const VerificationReport& rep) {
    for (const auto& c : rep.conditions)
        if (c.name == "weak_jump_pairing")
            return c.residual;
    return 1e30;
}

// criteria 10 and 11 share the expensive K = 1024 verifications
void criteria_10_11_12() {
    // single-mode classical jump identity
    double worst_jump = 0.0;
    Rng rng(0x3C);
    for (int n : {2, 3}) {
        const int k = 7;
        const double a = 0.6;
        auto ui = build_series(BallSeries::Variant::custom, n, k, 1.0, 0, 0.0,
                               {{k, a}});
        auto uo = kelvin_transform(ui).scaled(-1.0);
        for (int trial = 0; trial < 100; ++trial) {
            const auto th = random_theta(rng, n);
            const double jump = classical_jump_eval(uo, ui, th);
            const double target = (n - 2) * ui.boundary_eval(th);
            worst_jump = std::max(worst_jump, std::abs(jump - target));
        }
    }

    auto tilde2 = TransmissionInstance::build(TransmissionInstance::Variant::tilde,
                                              2, 1024);
    auto tilde3 = TransmissionInstance::build(TransmissionInstance::Variant::tilde,
                                              3, 1024);
    auto holder3 = TransmissionInstance::build(
        TransmissionInstance::Variant::holder, 3, 1024, -1.0, 0, 0.5);
    auto rep2 = verify_instance(tilde2, default_bump_set(2));
    auto rep3 = verify_instance(tilde3, default_bump_set(3));
    auto repH = verify_instance(holder3, default_bump_set(3));

    const double pair_worst = std::max(pairing_residual(rep2),
                                       pairing_residual(rep3));
    report(10, worst_jump <= 1e-10 && pair_worst <= 1e-3,
           "single-mode jump err " + num(worst_jump) +
               " (tol 1e-10); weak pairing rel err " + num(pair_worst) +
               " (tol 1e-3, 5 bumps, n = 2 and 3, K = 2^10)");

    auto rho1 = TransmissionInstance::build(TransmissionInstance::Variant::tilde,
                                            3, 1024, 1.0);
    const double M = kPi * kPi / 6.0;
    const double diag_err = std::abs(rho1.rho_one_diagnostic() - (M * M * M - M));
    report(11,
           rep2.all_pass && rep3.all_pass && repH.all_pass && diag_err <= 1e-3,
           std::string("verify_instance all-pass: tilde n=2 ") +
               (rep2.all_pass ? "yes" : "NO") + ", tilde n=3 " +
               (rep3.all_pass ? "yes" : "NO") + ", holder n=3 " +
               (repH.all_pass ? "yes" : "NO") + "; rho=1 diagnostic err " +
               num(diag_err) + " (tol 1e-3, target " + num(M * M * M - M) + ")");

    std::vector<double> ts;
    for (double t = -10.0; t <= 10.0 + 1e-9; t += 0.1)
        ts.push_back(t);
    auto grid = build_sphere_quadrature(3, 64, QuadratureMode::product);
    auto cert = certify_growth(rho1, ts, grid);
    const bool consts_ok =
        std::abs(cert.c1 - std::min(1.0, 3.0 / (kPi * kPi))) <= 1e-15 &&
        std::abs(cert.c2 - kPi * kPi / 6.0) <= 1e-15 &&
        cert.delta1 == 3.0 && cert.delta2 == 0.0;
    report(12, consts_ok && cert.ok,
           "c1 = min(1, 3/pi^2), c2 = pi^2/6, delta = (3, 0); slacks " +
               num(cert.worst_slack_f) + " / " + num(cert.worst_slack_g) +
               " >= 0: " + (cert.ok ? "yes" : "NO"));
}

// ---- 13 (soft): sup norms of random unit harmonics ----
void criterion13() {
    std::string detail;
    for (int k : {64, 256, 1024}) {
        const int n_azimuth = std::max(64, 2 * (k + 1));
        int pow2 = 1;
        while (pow2 < n_azimuth)
            pow2 <<= 1;
        const int n_polar = std::max(33, 2 * k + 1);
        SupNormGrid grid(k, n_polar, pow2);
        std::vector<double> ratios;
        for (int s = 0; s < 20; ++s) {
            auto y = HarmonicFunction::random_unit(3, k,
                                                   1000 + static_cast<std::uint64_t>(s));
            ratios.push_back(grid.estimate(y.coefficients()) /
                             std::sqrt(std::log(static_cast<double>(k))));
        }
        std::sort(ratios.begin(), ratios.end());
        const double median = 0.5 * (ratios[9] + ratios[10]);
        detail += "k=" + std::to_string(k) + ": median " + num(median) + "; ";
    }
    std::printf("criterion 13: REPORT  sup|Y_k| / sqrt(ln k) over 20 seeds, %s"
                "(no hard threshold)\n",
                detail.c_str());
}

} // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criteria_10_11_12();
    criterion13();
    if (failures > 0) {
        std::printf("%d criterion(s) FAILED\n", failures);
        return 1;
    }
    std::printf("all hard criteria passed\n");
    return 0;
}
