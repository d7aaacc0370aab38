#include "ballharm/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "ballharm/detail/fft.hpp"
#include "ballharm/harmonics.hpp"
#include "ballharm/rng.hpp"
#include "ballharm/specfun.hpp"

namespace ballharm {

namespace {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 1.0;
    bool degenerate = false; // y essentially constant
};

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n)
        throw std::domain_error("fit_line: need >= 2 matched points");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LineFit f;
    if (syy < 1e-20) {
        f.slope = 0.0;
        f.intercept = my;
        f.r_squared = 1.0;
        f.degenerate = true;
        return f;
    }
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = y[i] - (f.intercept + f.slope * x[i]);
        ssr += e * e;
    }
    f.r_squared = 1.0 - ssr / syy;
    return f;
}

std::complex<double> complex_pow(std::complex<double> z, int k) {
    std::complex<double> r(1.0, 0.0);
    for (int e = k; e > 0; e >>= 1) {
        if (e & 1)
            r *= z;
        z *= z;
    }
    return r;
}

} // namespace

double SpectralCoefficients::degree_power(int k) const {
    if (k < 0 || k > K)
        throw std::domain_error("SpectralCoefficients: degree out of range");
    double s = 0.0;
    for (double c : by_degree[static_cast<std::size_t>(k)])
        s += c * c;
    return s;
}

SpectralCoefficients
spectral_coefficients(const std::function<double(std::span<const double>)>& u, int n,
                      int K, const QuadratureRule& rule) {
    if (n != 2 && n != 3)
        throw std::domain_error("spectral_coefficients: n must be in {2,3}");
    if (rule.dim != n)
        throw std::domain_error("spectral_coefficients: rule dimension mismatch");
    if (K < 0)
        throw std::domain_error("spectral_coefficients: K must be >= 0");
    if (!rule.product || rule.degree < 2 * K)
        throw std::domain_error(
            "spectral_coefficients: rule exactness must be >= 2K (product mode)");

    SpectralCoefficients out;
    out.n = n;
    out.K = K;
    out.by_degree.resize(static_cast<std::size_t>(K) + 1);
    for (int k = 0; k <= K; ++k)
        out.by_degree[static_cast<std::size_t>(k)].assign(
            static_cast<std::size_t>(harmonic_dimension(n, k)), 0.0);

    const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * kPi);
    const double inv_sqrt_pi = 1.0 / std::sqrt(kPi);

    if (n == 2) {
        for (std::size_t i = 0; i < rule.size(); ++i) {
            const auto theta = rule.node(i);
            const double wu = rule.weights[i] * u(theta);
            const double t = std::atan2(theta[1], theta[0]);
            out.by_degree[0][0] += wu * inv_sqrt_2pi;
            for (int k = 1; k <= K; ++k) {
                out.by_degree[static_cast<std::size_t>(k)][0] +=
                    wu * std::cos(k * t) * inv_sqrt_pi;
                out.by_degree[static_cast<std::size_t>(k)][1] +=
                    wu * std::sin(k * t) * inv_sqrt_pi;
            }
        }
        return out;
    }

    const std::size_t cols = static_cast<std::size_t>(K) + 1;
    std::vector<double> table(cols * cols);
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const auto theta = rule.node(i);
        const double wu = rule.weights[i] * u(theta);
        orthonormal_legendre_table(K, theta[2], table);
        const double s = std::hypot(theta[0], theta[1]);
        double cphi = 1.0, sphi = 0.0;
        if (s >= 1e-150) {
            cphi = theta[0] / s;
            sphi = theta[1] / s;
        }
        double cm = 1.0, sm = 0.0; // cos(m phi), sin(m phi), updated per m
        for (int m = 0; m <= K; ++m) {
            if (m > 0) {
                const double c = cm * cphi - sm * sphi;
                const double ss = sm * cphi + cm * sphi;
                cm = c;
                sm = ss;
            }
            for (int k = m; k <= K; ++k) {
                const double th = table[static_cast<std::size_t>(k) * cols + m];
                auto& row = out.by_degree[static_cast<std::size_t>(k)];
                if (m == 0) {
                    row[0] += wu * th * inv_sqrt_2pi;
                } else {
                    row[static_cast<std::size_t>(2 * m - 1)] +=
                        wu * th * cm * inv_sqrt_pi;
                    row[static_cast<std::size_t>(2 * m)] += wu * th * sm * inv_sqrt_pi;
                }
            }
        }
    }
    return out;
}

double sobolev_partial_sum(const BallSeries& u, double sigma, long long K) {
    if (sigma < 0.0)
        throw std::domain_error("sobolev_partial_sum: sigma must be >= 0");
    const int n = u.dim();
    double s = 0.0;
    for (const auto& t : u.terms()) {
        if (t.k > K)
            break;
        const double mu = static_cast<double>(t.k) * (t.k + n - 2);
        const double c = u.scale() * t.a;
        const double l2 = t.y.l2_norm();
        s += std::pow(mu, sigma) * c * c * l2 * l2;
    }
    return s;
}

namespace {

// block index j such that k = 2^j (or 4^j for the hadamard schedule)
int block_index(BallSeries::Variant variant, int k, int position) {
    if (variant == BallSeries::Variant::custom)
        return position + 1;
    int j = 0;
    for (int v = k; v > 1; v >>= 1)
        ++j;
    return variant == BallSeries::Variant::hadamard_2d ? j / 2 : j;
}

// known polynomial modulation of the block increments (the j^{-4} factor of
// the inverse-square schedules); compensated out before the geometric fit
double modulation(BallSeries::Variant variant, int j) {
    if (variant == BallSeries::Variant::notHs ||
        variant == BallSeries::Variant::notCbeta)
        return 1.0 / (static_cast<double>(j) * j * static_cast<double>(j) * j);
    return 1.0;
}

// p-series exponent left after the geometric part (0 = none)
double modulation_power(BallSeries::Variant variant) {
    if (variant == BallSeries::Variant::notHs ||
        variant == BallSeries::Variant::notCbeta)
        return 4.0;
    return 0.0;
}

} // namespace

std::vector<SobolevScan> classify_sobolev(const BallSeries& u,
                                          std::span<const double> sigma_grid,
                                          long long K_max) {
    constexpr double kSlopeThreshold = 0.01; // nat log per block
    constexpr int kMaxWindow = 11;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const int n = u.dim();

    std::vector<SobolevScan> scans;
    for (double sigma : sigma_grid) {
        if (sigma < 0.0)
            throw std::domain_error("classify_sobolev: sigma must be >= 0");
        SobolevScan scan;
        scan.sigma = sigma;
        scan.limit_estimate = nan;

        double S = 0.0;
        double prev_comp = nan;
        int position = 0;
        std::vector<double> comp; // modulation-compensated increments
        for (const auto& t : u.terms()) {
            if (t.k > K_max)
                break;
            const double mu = static_cast<double>(t.k) * (t.k + n - 2);
            const double c = u.scale() * t.a;
            const double l2 = t.y.l2_norm();
            const double inc = std::pow(mu, sigma) * c * c * l2 * l2;
            S += inc;
            const int j = block_index(u.variant(), t.k, position);
            const double cj = inc / modulation(u.variant(), j);
            scan.blocks.push_back({j, static_cast<long long>(t.k), S, inc,
                                   std::isnan(prev_comp) ? nan : cj / prev_comp});
            comp.push_back(cj);
            prev_comp = cj;
            ++position;
        }

        const std::size_t count = comp.size();
        if (count == 0) {
            scan.verdict = SobolevScan::Verdict::convergent;
            scan.limit_estimate = 0.0;
            scan.r_squared = 1.0;
            scans.push_back(std::move(scan));
            continue;
        }
        bool all_zero = true;
        for (double v : comp)
            all_zero = all_zero && v == 0.0;
        if (all_zero) {
            scan.verdict = SobolevScan::Verdict::convergent;
            scan.limit_estimate = S;
            scan.r_squared = 1.0;
            scans.push_back(std::move(scan));
            continue;
        }

        const std::size_t window = std::min<std::size_t>(kMaxWindow, count);
        if (window < 6) {
            scan.verdict = SobolevScan::Verdict::inconclusive;
            scans.push_back(std::move(scan));
            continue;
        }
        std::vector<double> xs, ys;
        bool fittable = true;
        for (std::size_t i = count - window; i < count; ++i) {
            if (!(comp[i] > 0.0)) {
                fittable = false;
                break;
            }
            xs.push_back(static_cast<double>(scan.blocks[i].j));
            ys.push_back(std::log(comp[i]));
        }
        if (!fittable) {
            scan.verdict = SobolevScan::Verdict::inconclusive;
            scans.push_back(std::move(scan));
            continue;
        }
        const LineFit fit = fit_line(xs, ys);
        scan.fitted_exponent = fit.slope / std::numbers::ln2;
        scan.r_squared = fit.r_squared;

        const double last_inc = scan.blocks.back().increment;
        const int last_j = scan.blocks.back().j;
        const double p = modulation_power(u.variant());
        if (fit.slope > kSlopeThreshold && fit.r_squared >= 0.99) {
            scan.verdict = SobolevScan::Verdict::divergent;
        } else if (fit.slope < -kSlopeThreshold && fit.r_squared >= 0.99) {
            scan.verdict = SobolevScan::Verdict::convergent;
            const double g = std::exp(fit.slope);
            scan.limit_estimate = S + last_inc * g / (1.0 - g);
        } else if (std::abs(fit.slope) <= kSlopeThreshold) {
            // marginal band: fall back to the schedule's exact p-series part
            if (p > 1.0) {
                scan.verdict = SobolevScan::Verdict::convergent;
                // midpoint tail of sum_{j > J} u_J j^{-p}
                scan.limit_estimate =
                    S + comp.back() * std::pow(last_j + 0.5, 1.0 - p) / (p - 1.0);
            } else {
                scan.verdict = SobolevScan::Verdict::divergent_marginal;
            }
        } else {
            scan.verdict = SobolevScan::Verdict::inconclusive;
        }
        scans.push_back(std::move(scan));
    }
    return scans;
}

namespace {

const char* verdict_name(SobolevScan::Verdict v) {
    switch (v) {
    case SobolevScan::Verdict::convergent: return "convergent";
    case SobolevScan::Verdict::divergent: return "divergent";
    case SobolevScan::Verdict::divergent_marginal: return "divergent-marginal";
    case SobolevScan::Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

} // namespace

std::string SobolevScan::to_json() const {
    nlohmann::json j;
    j["sigma"] = sigma;
    nlohmann::json bl = nlohmann::json::array();
    for (const auto& b : blocks) {
        nlohmann::json e{{"K", b.K}, {"S_K", b.S_K}, {"increment", b.increment}};
        if (!std::isnan(b.compensated_ratio))
            e["compensated_ratio"] = b.compensated_ratio;
        bl.push_back(std::move(e));
    }
    j["blocks"] = std::move(bl);
    j["verdict"] = verdict_name(verdict);
    j["fitted_exponent"] = fitted_exponent;
    j["r_squared"] = r_squared;
    if (!std::isnan(limit_estimate))
        j["limit_estimate"] = limit_estimate;
    return j.dump(2);
}

double dirichlet_energy_2d(const BallSeries& u, int K, EnergyMode mode) {
    if (u.dim() != 2)
        throw std::domain_error("dirichlet_energy_2d: series must have n = 2");
    if (u.radial() != BallSeries::Radial::interior)
        throw std::domain_error("dirichlet_energy_2d: interior series required");
    if (u.variant() == BallSeries::Variant::notHs)
        throw std::domain_error(
            "dirichlet_energy_2d: cosine-type (highest-weight) series required");

    std::vector<std::pair<int, double>> kept; // (k, scaled coefficient)
    for (const auto& t : u.terms())
        if (t.k <= K)
            kept.emplace_back(t.k, u.scale() * t.a);

    if (mode == EnergyMode::formula) {
        double e = 0.0;
        for (const auto& [k, c] : kept)
            e += static_cast<double>(k) * c * c;
        return kPi * e;
    }

    int k_big = 1;
    for (const auto& [k, c] : kept)
        k_big = std::max(k_big, k);
    // |grad u|^2 = |f'(z)|^2 for u = Re f, f = sum c_k z^k
    QuadratureRule angular =
        build_sphere_quadrature(2, 2 * k_big, QuadratureMode::product);
    AnnulusRule rule = build_annulus_rule_graded(
        2, 0.0, 1.0, 1.0, std::max(2.0, 2.0 * k_big), 24, std::move(angular));
    return rule.integrate([&kept](std::span<const double> x) {
        const std::complex<double> z(x[0], x[1]);
        std::complex<double> d(0.0, 0.0);
        for (const auto& [k, c] : kept)
            if (k >= 1)
                d += c * static_cast<double>(k) * complex_pow(z, k - 1);
        return std::norm(d);
    });
}

ModulusTable holder_modulus(const std::function<double(double)>& f,
                            std::span<const double> scales, int sample_count,
                            std::uint64_t seed) {
    if (scales.size() < 7)
        throw std::domain_error(
            "holder_modulus: need >= 7 scales (the fit discards 2 + 2)");
    if (sample_count < 10000)
        throw std::domain_error("holder_modulus: sample_count must be >= 10^4");

    ModulusTable tab;
    tab.delta.assign(scales.begin(), scales.end());
    std::sort(tab.delta.begin(), tab.delta.end());
    for (double d : tab.delta)
        if (!(d > 0.0))
            throw std::domain_error("holder_modulus: scales must be positive");

    tab.omega.resize(tab.delta.size(), 0.0);
    for (std::size_t i = 0; i < tab.delta.size(); ++i) {
        Rng rng(Rng::derive_seed(seed, i));
        const double d = tab.delta[i];
        double w = 0.0;
        for (int s = 0; s < sample_count; ++s) {
            const double t = rng.uniform(0.0, 2.0 * kPi);
            w = std::max(w, std::abs(f(t + d) - f(t)));
        }
        tab.omega[i] = w;
    }
    // running maxima: omega must be non-decreasing in delta
    for (std::size_t i = 1; i < tab.omega.size(); ++i)
        tab.omega[i] = std::max(tab.omega[i], tab.omega[i - 1]);

    std::vector<double> xs, ys;
    for (std::size_t i = 2; i + 2 < tab.delta.size(); ++i) {
        if (!(tab.omega[i] > 0.0))
            continue;
        xs.push_back(std::log(tab.delta[i]));
        ys.push_back(std::log(tab.omega[i]));
    }
    if (xs.size() >= 2) {
        const LineFit fit = fit_line(xs, ys);
        tab.fitted_alpha = fit.slope;
        double worst = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i)
            worst = std::max(worst,
                             std::abs(ys[i] - (fit.intercept + fit.slope * xs[i])));
        tab.fit_residual = worst;
    }
    return tab;
}

std::string ModulusTable::to_csv() const {
    std::string out = "delta,omega\n";
    char buf[80];
    for (std::size_t i = 0; i < delta.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", delta[i], omega[i]);
        out += buf;
    }
    return out;
}

FourierDecayCertificate fourier_decay_certificate(std::span<const double> samples,
                                                  double alpha, int k_max) {
    const std::size_t N = samples.size();
    if (!detail::is_power_of_two(N) || N < 8)
        throw std::domain_error(
            "fourier_decay_certificate: sample count must be a power of two >= 8");
    const int aa_limit = static_cast<int>(N / 4);
    if (k_max == 0)
        k_max = aa_limit;
    if (k_max > aa_limit)
        throw std::domain_error(
            "fourier_decay_certificate: k beyond N/4 anti-aliasing margin");
    if (!(alpha > 0.0))
        throw std::domain_error("fourier_decay_certificate: alpha must be positive");

    std::vector<std::complex<double>> z(samples.begin(), samples.end());
    detail::fft_inplace(z, /*inverse=*/false);

    FourierDecayCertificate cert;
    cert.alpha = alpha;
    cert.k_max = k_max;
    cert.coeff_abs.resize(static_cast<std::size_t>(k_max) + 1);
    cert.coeff_abs[0] = std::abs(z[0]) / static_cast<double>(N);
    for (int k = 1; k <= k_max; ++k)
        cert.coeff_abs[static_cast<std::size_t>(k)] =
            2.0 * std::abs(z[static_cast<std::size_t>(k)]) / static_cast<double>(N);

    // dyadic windows [2^w, 2^{w+1}) and their lacunary peaks
    std::vector<std::pair<double, double>> peaks; // (k, |c_k|)
    for (int lo = 1; lo <= k_max; lo *= 2) {
        const int hi = std::min(2 * lo, k_max + 1);
        FourierDecayCertificate::Window w{lo, hi, 0.0, lo};
        double peak_c = 0.0;
        int peak_k = lo;
        for (int k = lo; k < hi; ++k) {
            const double c = cert.coeff_abs[static_cast<std::size_t>(k)];
            const double weighted = c * std::pow(static_cast<double>(k), alpha);
            if (weighted > w.C) {
                w.C = weighted;
                w.arg_k = k;
            }
            if (c > peak_c) {
                peak_c = c;
                peak_k = k;
            }
        }
        cert.windows.push_back(w);
        if (peak_c > 1e-12)
            peaks.emplace_back(static_cast<double>(peak_k), peak_c);
    }

    if (peaks.size() < 3) {
        cert.growing = false; // too sparse to certify growth; report windows only
        return cert;
    }

    // estimate the lacunary base from consecutive peak spacing
    std::vector<double> lr;
    for (std::size_t i = 1; i < peaks.size(); ++i)
        lr.push_back(std::log(peaks[i].first / peaks[i - 1].first));
    std::nth_element(lr.begin(), lr.begin() + lr.size() / 2, lr.end());
    const double ln_base = lr[lr.size() / 2];
    cert.fitted_base = std::exp(ln_base);

    // fit ln|c_j| = a0 - p ln j - q j over the peaks (3x3 normal equations)
    double A[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    double rhs[3] = {0, 0, 0};
    int used = 0;
    for (const auto& [k, c] : peaks) {
        const int j = static_cast<int>(std::lround(std::log(k) / ln_base));
        if (j < 1)
            continue;
        const double v[3] = {1.0, -std::log(static_cast<double>(j)),
                             -static_cast<double>(j)};
        const double y = std::log(c);
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b)
                A[a][b] += v[a] * v[b];
            rhs[a] += v[a] * y;
        }
        ++used;
    }
    if (used >= 3) {
        // Gaussian elimination with partial pivoting on the 3x3 system
        int piv[3] = {0, 1, 2};
        for (int c = 0; c < 3; ++c) {
            int best = c;
            for (int r = c + 1; r < 3; ++r)
                if (std::abs(A[piv[r]][c]) > std::abs(A[piv[best]][c]))
                    best = r;
            std::swap(piv[c], piv[best]);
            if (std::abs(A[piv[c]][c]) < 1e-12) {
                used = 0; // singular: skip the model verdict
                break;
            }
            for (int r = c + 1; r < 3; ++r) {
                const double f = A[piv[r]][c] / A[piv[c]][c];
                for (int cc = c; cc < 3; ++cc)
                    A[piv[r]][cc] -= f * A[piv[c]][cc];
                rhs[piv[r]] -= f * rhs[piv[c]];
            }
        }
        if (used >= 3) {
            double sol[3];
            for (int c = 2; c >= 0; --c) {
                double v = rhs[piv[c]];
                for (int cc = c + 1; cc < 3; ++cc)
                    v -= A[piv[c]][cc] * sol[cc];
                sol[c] = v / A[piv[c]][c];
            }
            cert.fitted_p = sol[1];
            cert.fitted_q = sol[2];
            // |c_j| k_j^alpha = A j^{-p} exp((alpha ln b - q) j)
            cert.growing = alpha * ln_base > cert.fitted_q + 0.02;
        }
    }
    return cert;
}

std::string FourierDecayCertificate::to_json() const {
    nlohmann::json j;
    j["alpha"] = alpha;
    j["k_max"] = k_max;
    nlohmann::json ws = nlohmann::json::array();
    for (const auto& w : windows)
        ws.push_back({{"k_lo", w.k_lo}, {"k_hi", w.k_hi}, {"C", w.C}, {"arg_k", w.arg_k}});
    j["windows"] = std::move(ws);
    j["verdict"] = growing ? "growing" : "bounded";
    j["fitted_p"] = fitted_p;
    j["fitted_q"] = fitted_q;
    j["fitted_base"] = fitted_base;
    return j.dump(2);
}

} // namespace ballharm
