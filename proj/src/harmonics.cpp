#include "ballharm/harmonics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "ballharm/detail/fft.hpp"
#include "ballharm/rng.hpp"
#include "ballharm/specfun.hpp"

namespace ballharm {

namespace {

using u128 = unsigned __int128;

u128 binomial_u128(int a, int b) {
    if (b < 0 || b > a)
        return 0;
    b = std::min(b, a - b);
    u128 r = 1;
    for (int i = 1; i <= b; ++i) {
        const u128 factor = static_cast<u128>(a - b + i);
        if (r > (~static_cast<u128>(0)) / factor)
            throw std::overflow_error("harmonic_dimension: intermediate overflow");
        r = r * factor / static_cast<u128>(i);
    }
    return r;
}

// log C_k^{lambda}(1) = log(Gamma(k+2*lambda) / (k! Gamma(2*lambda)))
double gegenbauer_log_at_one(int k, double lambda) {
    return log_gamma(k + 2.0 * lambda) - log_gamma(k + 1.0) - log_gamma(2.0 * lambda);
}

// log of ||C_k^{lambda}(<pole,.>)||_{L^2(S^{n-1})}^2, n >= 3, lambda = (n-2)/2:
// |S^{n-2}| * pi * 2^{1-2l} * Gamma(k+2l) / (k! (k+l) Gamma(l)^2).
double zonal_log_norm2(int n, int k) {
    const double l = 0.5 * (n - 2);
    return std::log(sphere_surface_area(n - 1)) + std::log(kPi) +
           (1.0 - 2.0 * l) * std::log(2.0) + log_gamma(k + 2.0 * l) -
           log_gamma(k + 1.0) - std::log(k + l) - 2.0 * log_gamma(l);
}

double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

// Azimuthal angle data for a point on S^2: cos(theta_polar) plus the unit
// azimuth direction (arbitrary when the point sits on the polar axis, where
// all m >= 1 terms vanish anyway).
struct PolarAzimuth {
    double z;
    double cphi, sphi;
};

PolarAzimuth split_s2(std::span<const double> theta) {
    PolarAzimuth pa;
    pa.z = clamp_unit(theta[2]);
    const double s = std::hypot(theta[0], theta[1]);
    if (s < 1e-150) {
        pa.cphi = 1.0;
        pa.sphi = 0.0;
    } else {
        pa.cphi = theta[0] / s;
        pa.sphi = theta[1] / s;
    }
    return pa;
}

// Sum over the n = 3 coefficient layout: index 0 <-> m = 0, index 2m-1 <->
// cos(m phi), index 2m <-> sin(m phi), with azimuth factors 1/sqrt(2 pi) and
// 1/sqrt(pi).
double combine_s2(std::span<const double> coeffs, std::span<const double> theta_col,
                  const PolarAzimuth& pa) {
    const int k = static_cast<int>(theta_col.size()) - 1;
    double acc = coeffs[0] * theta_col[0] / std::sqrt(2.0 * kPi);
    double cm = 1.0, sm = 0.0; // cos(m phi), sin(m phi)
    const double inv_sqrt_pi = 1.0 / std::sqrt(kPi);
    for (int m = 1; m <= k; ++m) {
        const double c = cm * pa.cphi - sm * pa.sphi;
        const double s = sm * pa.cphi + cm * pa.sphi;
        cm = c;
        sm = s;
        acc += (coeffs[static_cast<std::size_t>(2 * m - 1)] * cm +
                coeffs[static_cast<std::size_t>(2 * m)] * sm) *
               theta_col[static_cast<std::size_t>(m)] * inv_sqrt_pi;
    }
    return acc;
}

} // namespace

std::int64_t harmonic_dimension(int n, int k) {
    if (n < 2)
        throw std::domain_error("harmonic_dimension: n must be >= 2");
    if (k < 0)
        throw std::domain_error("harmonic_dimension: k must be >= 0");
    if (k == 0)
        return 1;
    // dim H_k = C(n+k-1, k) - C(n+k-3, k-2)
    const u128 d = binomial_u128(n + k - 1, k) - binomial_u128(n + k - 3, k - 2);
    if (d > static_cast<u128>(std::numeric_limits<std::int64_t>::max()))
        throw std::overflow_error("harmonic_dimension: result exceeds 64-bit range");
    return static_cast<std::int64_t>(d);
}

double laplace_beltrami_eigenvalue(int n, int k) {
    if (n < 2 || k < 0)
        throw std::domain_error("laplace_beltrami_eigenvalue: need n >= 2, k >= 0");
    return static_cast<double>(k) * (k + n - 2);
}

double highest_weight_eval(int n, int k, std::span<const double> theta) {
    if (static_cast<int>(theta.size()) != n || n < 2)
        throw std::domain_error("highest_weight_eval: dimension mismatch");
    if (k < 0)
        throw std::domain_error("highest_weight_eval: k must be >= 0");
    std::complex<double> base(theta[0], theta[1]);
    std::complex<double> pw(1.0, 0.0);
    for (int e = k; e > 0; e >>= 1) {
        if (e & 1)
            pw *= base;
        base *= base;
    }
    return pw.real();
}

double highest_weight_l2_norm(int n, int k) {
    if (n < 2)
        throw std::domain_error("highest_weight_l2_norm: n must be >= 2");
    if (k < 1)
        throw std::domain_error(
            "highest_weight_l2_norm: closed form exposed for k >= 1 only");
    return std::exp(0.5 * (0.5 * n * std::log(kPi) + log_gamma(k + 1.0) -
                           log_gamma(k + 0.5 * n)));
}

double gegenbauer(int k, double lambda, double x) {
    if (k < 0)
        throw std::domain_error("gegenbauer: k must be >= 0");
    if (k > (1 << 14))
        throw std::domain_error("gegenbauer: k > 2^14 refused (recurrence overflow)");
    if (!(lambda > 0.0))
        throw std::domain_error("gegenbauer: lambda must be positive");
    if (k == 0)
        return 1.0;
    double prev = 1.0;
    double curr = 2.0 * lambda * x;
    for (int m = 2; m <= k; ++m) {
        const double next =
            (2.0 * x * (m + lambda - 1.0) * curr - (m + 2.0 * lambda - 2.0) * prev) / m;
        prev = curr;
        curr = next;
    }
    return curr;
}

double zonal_eval(int n, int k, const SpherePoint& pole, const SpherePoint& theta) {
    if (pole.dim() != n || theta.dim() != n)
        throw std::domain_error("zonal_eval: dimension mismatch");
    if (k < 0)
        throw std::domain_error("zonal_eval: k must be >= 0");
    if (n == 2) {
        if (k == 0)
            return 1.0 / std::sqrt(2.0 * kPi);
        const double dot = pole[0] * theta[0] + pole[1] * theta[1];
        const double cross = pole[0] * theta[1] - pole[1] * theta[0];
        return std::cos(k * std::atan2(cross, dot)) / std::sqrt(kPi);
    }
    if (k == 0)
        return 1.0 / std::sqrt(sphere_surface_area(n));
    double dot = 0.0;
    for (int d = 0; d < n; ++d)
        dot += pole[d] * theta[d];
    const double norm = std::exp(0.5 * zonal_log_norm2(n, k));
    return gegenbauer(k, 0.5 * (n - 2), clamp_unit(dot)) / norm;
}

void orthonormal_legendre_column(int k, double x, std::span<double> out) {
    if (k < 0 || static_cast<int>(out.size()) != k + 1)
        throw std::domain_error("orthonormal_legendre_column: bad output size");
    x = clamp_unit(x);
    const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
    double pmm = 1.0 / std::sqrt(2.0); // Theta_{0,0}
    for (int m = 0; m <= k; ++m) {
        if (m == k) {
            out[static_cast<std::size_t>(m)] = pmm;
            break;
        }
        // climb degree at fixed order m
        double pl2 = pmm;
        double pl1 = std::sqrt(2.0 * m + 3.0) * x * pmm; // Theta_{m+1,m}
        if (m + 1 == k) {
            out[static_cast<std::size_t>(m)] = pl1;
        } else {
            for (int l = m + 2; l <= k; ++l) {
                const double lm2 = static_cast<double>(l) * l - static_cast<double>(m) * m;
                const double a = std::sqrt((4.0 * l * l - 1.0) / lm2);
                const double b = std::sqrt((2.0 * l + 1.0) * (l - 1.0 + m) *
                                           (l - 1.0 - m) / ((2.0 * l - 3.0) * lm2));
                const double pl = a * x * pl1 - b * pl2;
                pl2 = pl1;
                pl1 = pl;
            }
            out[static_cast<std::size_t>(m)] = pl1;
        }
        pmm *= s * std::sqrt((2.0 * m + 3.0) / (2.0 * m + 2.0));
    }
}

void orthonormal_legendre_table(int K, double x, std::span<double> out) {
    const std::size_t cols = static_cast<std::size_t>(K) + 1;
    if (K < 0 || out.size() != cols * cols)
        throw std::domain_error("orthonormal_legendre_table: bad output size");
    std::fill(out.begin(), out.end(), 0.0);
    x = clamp_unit(x);
    const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
    double pmm = 1.0 / std::sqrt(2.0);
    for (int m = 0; m <= K; ++m) {
        out[static_cast<std::size_t>(m) * cols + m] = pmm;
        if (m < K) {
            double pl2 = pmm;
            double pl1 = std::sqrt(2.0 * m + 3.0) * x * pmm;
            out[(static_cast<std::size_t>(m) + 1) * cols + m] = pl1;
            for (int l = m + 2; l <= K; ++l) {
                const double lm2 =
                    static_cast<double>(l) * l - static_cast<double>(m) * m;
                const double a = std::sqrt((4.0 * l * l - 1.0) / lm2);
                const double b = std::sqrt((2.0 * l + 1.0) * (l - 1.0 + m) *
                                           (l - 1.0 - m) / ((2.0 * l - 3.0) * lm2));
                const double pl = a * x * pl1 - b * pl2;
                pl2 = pl1;
                pl1 = pl;
                out[static_cast<std::size_t>(l) * cols + m] = pl;
            }
            pmm *= s * std::sqrt((2.0 * m + 3.0) / (2.0 * m + 2.0));
        }
    }
}

HarmonicFunction HarmonicFunction::highest_weight(int n, int k) {
    if (n < 2 || k < 0)
        throw std::domain_error("HarmonicFunction: need n >= 2, k >= 0");
    return HarmonicFunction(n, k, Kind::highest_weight);
}

HarmonicFunction HarmonicFunction::zonal(int n, int k, SpherePoint pole) {
    if (pole.dim() != n)
        throw std::domain_error("HarmonicFunction: pole dimension mismatch");
    if (k < 0)
        throw std::domain_error("HarmonicFunction: k must be >= 0");
    HarmonicFunction y(n, k, Kind::zonal);
    y.pole_.assign(pole.coords().begin(), pole.coords().end());
    if (n >= 3 && k >= 1)
        y.zonal_norm_ = std::exp(0.5 * zonal_log_norm2(n, k));
    return y;
}

HarmonicFunction HarmonicFunction::basis_element(int n, int k, int j) {
    if (n != 2 && n != 3)
        throw std::domain_error(
            "HarmonicFunction: orthonormal bases are available for n in {2,3} only");
    if (k < 0 || j < 0 || j >= harmonic_dimension(n, k))
        throw std::domain_error("HarmonicFunction: basis index out of range");
    HarmonicFunction y(n, k, Kind::basis_element);
    y.basis_index_ = j;
    return y;
}

HarmonicFunction HarmonicFunction::random_unit(int n, int k, std::uint64_t seed) {
    if (n != 2 && n != 3)
        throw std::domain_error(
            "HarmonicFunction: random draws are available for n in {2,3} only");
    if (k < 0)
        throw std::domain_error("HarmonicFunction: k must be >= 0");
    HarmonicFunction y(n, k, Kind::random);
    const auto d = static_cast<std::size_t>(harmonic_dimension(n, k));
    Rng rng(Rng::derive_seed(seed, static_cast<std::uint64_t>(k)));
    y.coeffs_.resize(d);
    double norm2 = 0.0;
    do {
        norm2 = 0.0;
        for (double& c : y.coeffs_) {
            c = rng.gaussian();
            norm2 += c * c;
        }
    } while (norm2 < 1e-290);
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& c : y.coeffs_)
        c *= inv;
    return y;
}

double HarmonicFunction::eval(std::span<const double> theta) const {
    if (static_cast<int>(theta.size()) != n_)
        throw std::domain_error("HarmonicFunction::eval: dimension mismatch");
    switch (kind_) {
    case Kind::highest_weight:
        return highest_weight_eval(n_, k_, theta);
    case Kind::zonal: {
        if (n_ == 2) {
            if (k_ == 0)
                return 1.0 / std::sqrt(2.0 * kPi);
            const double dot = pole_[0] * theta[0] + pole_[1] * theta[1];
            const double cross = pole_[0] * theta[1] - pole_[1] * theta[0];
            return std::cos(k_ * std::atan2(cross, dot)) / std::sqrt(kPi);
        }
        if (k_ == 0)
            return 1.0 / std::sqrt(sphere_surface_area(n_));
        double dot = 0.0;
        for (int d = 0; d < n_; ++d)
            dot += pole_[static_cast<std::size_t>(d)] * theta[static_cast<std::size_t>(d)];
        return gegenbauer(k_, 0.5 * (n_ - 2), clamp_unit(dot)) / zonal_norm_;
    }
    case Kind::basis_element:
    case Kind::random:
        break;
    }

    // basis_element / random over the explicit n in {2,3} bases
    if (n_ == 2) {
        if (k_ == 0) {
            const double c0 = kind_ == Kind::random ? coeffs_[0] : 1.0;
            return c0 / std::sqrt(2.0 * kPi);
        }
        const double t = std::atan2(theta[1], theta[0]);
        const double cb = std::cos(k_ * t) / std::sqrt(kPi);
        const double sb = std::sin(k_ * t) / std::sqrt(kPi);
        if (kind_ == Kind::basis_element)
            return basis_index_ == 0 ? cb : sb;
        return coeffs_[0] * cb + coeffs_[1] * sb;
    }

    std::vector<double> col(static_cast<std::size_t>(k_) + 1);
    orthonormal_legendre_column(k_, theta[2], col);
    const PolarAzimuth pa = split_s2(theta);
    if (kind_ == Kind::random)
        return combine_s2(coeffs_, col, pa);
    // one-hot basis element
    const int j = basis_index_;
    if (j == 0)
        return col[0] / std::sqrt(2.0 * kPi);
    const int m = (j + 1) / 2;
    const double phi = std::atan2(pa.sphi, pa.cphi);
    const double az = (j % 2 == 1) ? std::cos(m * phi) : std::sin(m * phi);
    return col[static_cast<std::size_t>(m)] * az / std::sqrt(kPi);
}

double HarmonicFunction::l2_norm() const {
    if (kind_ == Kind::highest_weight) {
        if (k_ == 0)
            return std::sqrt(sphere_surface_area(n_));
        return highest_weight_l2_norm(n_, k_);
    }
    return 1.0;
}

double HarmonicFunction::sup_norm_bound() const {
    switch (kind_) {
    case Kind::highest_weight:
        return 1.0;
    case Kind::zonal:
        if (k_ == 0)
            return 1.0 / std::sqrt(sphere_surface_area(n_));
        if (n_ == 2)
            return 1.0 / std::sqrt(kPi);
        // Gegenbauer is maximal at argument 1 for lambda > 0
        return std::exp(gegenbauer_log_at_one(k_, 0.5 * (n_ - 2)) -
                        0.5 * zonal_log_norm2(n_, k_));
    case Kind::basis_element:
    case Kind::random:
        // addition-formula bound: |Y| <= sqrt(d_k / |S^{n-1}|) for ||Y||_2 = 1
        return std::sqrt(static_cast<double>(harmonic_dimension(n_, k_)) /
                         sphere_surface_area(n_));
    }
    throw std::logic_error("HarmonicFunction: unknown kind");
}

std::vector<HarmonicFunction> orthonormal_basis(int n, int k) {
    const std::int64_t d = harmonic_dimension(n, k);
    if (n != 2 && n != 3)
        throw std::domain_error(
            "orthonormal_basis: available for n in {2,3} only");
    std::vector<HarmonicFunction> basis;
    basis.reserve(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j)
        basis.push_back(HarmonicFunction::basis_element(n, k, j));
    return basis;
}

SupNormGrid::SupNormGrid(int k, int n_polar, int n_azimuth)
    : k_(k), n_polar_(n_polar), n_azimuth_(n_azimuth) {
    if (k < 0 || n_polar < 1 || n_azimuth < 2 * (k + 1))
        throw std::domain_error("SupNormGrid: need n_azimuth >= 2(k+1)");
    if (!detail::is_power_of_two(static_cast<std::size_t>(n_azimuth)))
        throw std::domain_error("SupNormGrid: n_azimuth must be a power of two");
    // Precompute the recurrence coefficients once; the per-row column
    // evaluation is then pure multiply-adds.
    const std::size_t cols = static_cast<std::size_t>(k) + 1;
    std::vector<double> acoef(cols * cols, 0.0), bcoef(cols * cols, 0.0);
    for (int m = 0; m <= k; ++m)
        for (int l = m + 2; l <= k; ++l) {
            const double lm2 = static_cast<double>(l) * l - static_cast<double>(m) * m;
            acoef[static_cast<std::size_t>(m) * cols + l] =
                std::sqrt((4.0 * l * l - 1.0) / lm2);
            bcoef[static_cast<std::size_t>(m) * cols + l] =
                std::sqrt((2.0 * l + 1.0) * (l - 1.0 + m) * (l - 1.0 - m) /
                          ((2.0 * l - 3.0) * lm2));
        }
    std::vector<double> pmm_scale(cols);
    pmm_scale[0] = 1.0 / std::sqrt(2.0);
    for (int m = 0; m + 1 <= k; ++m)
        pmm_scale[static_cast<std::size_t>(m) + 1] =
            std::sqrt((2.0 * m + 3.0) / (2.0 * m + 2.0));

    theta_.resize(static_cast<std::size_t>(n_polar) * cols);
    for (int p = 0; p < n_polar; ++p) {
        const double ang = kPi * (p + 0.5) / n_polar;
        const double x = std::cos(ang);
        const double s = std::sin(ang);
        double* row = theta_.data() + static_cast<std::size_t>(p) * cols;
        double pmm = pmm_scale[0];
        for (int m = 0; m <= k; ++m) {
            if (m == k) {
                row[m] = pmm;
                break;
            }
            double pl2 = pmm;
            double pl1 = std::sqrt(2.0 * m + 3.0) * x * pmm;
            if (m + 1 == k) {
                row[m] = pl1;
            } else {
                const double* am = acoef.data() + static_cast<std::size_t>(m) * cols;
                const double* bm = bcoef.data() + static_cast<std::size_t>(m) * cols;
                for (int l = m + 2; l <= k; ++l) {
                    const double pl = am[l] * x * pl1 - bm[l] * pl2;
                    pl2 = pl1;
                    pl1 = pl;
                }
                row[m] = pl1;
            }
            pmm *= s * pmm_scale[static_cast<std::size_t>(m) + 1];
        }
    }
}

double SupNormGrid::estimate(std::span<const double> coeffs) const {
    const std::size_t cols = static_cast<std::size_t>(k_) + 1;
    if (coeffs.size() != 2 * cols - 1)
        throw std::domain_error("SupNormGrid::estimate: coefficient size mismatch");
    const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * kPi);
    const double inv_sqrt_pi = 1.0 / std::sqrt(kPi);
    std::vector<std::complex<double>> z;
    double best = 0.0;
    for (int p = 0; p < n_polar_; ++p) {
        const double* row = theta_.data() + static_cast<std::size_t>(p) * cols;
        z.assign(static_cast<std::size_t>(n_azimuth_), {0.0, 0.0});
        z[0] = coeffs[0] * row[0] * inv_sqrt_2pi;
        for (int m = 1; m <= k_; ++m)
            z[static_cast<std::size_t>(m)] =
                std::complex<double>(coeffs[static_cast<std::size_t>(2 * m - 1)],
                                     -coeffs[static_cast<std::size_t>(2 * m)]) *
                (row[m] * inv_sqrt_pi);
        detail::fft_inplace(z, /*inverse=*/true);
        // inverse transform evaluates sum_m z_m e^{i m phi_q} up to the 1/N
        // factor we undo here
        for (const auto& v : z)
            best = std::max(best, std::abs(v.real()) * n_azimuth_);
    }
    return best;
}

double SupNormGrid::grid_spacing() const {
    return std::max(kPi / n_polar_, 2.0 * kPi / n_azimuth_);
}

namespace {

int next_pow2(int v) {
    int p = 1;
    while (p < v)
        p <<= 1;
    return p;
}

} // namespace

double estimate_sup_norm(const HarmonicFunction& y, int target_points,
                         double* grid_spacing) {
    if (target_points < 16)
        throw std::domain_error("estimate_sup_norm: target_points too small");
    const int n = y.dim();
    const int k = y.degree();

    if (n == 2 || y.kind() == HarmonicFunction::Kind::zonal ||
        y.kind() == HarmonicFunction::Kind::highest_weight) {
        // One-dimensional scan: over the circle for n = 2, over the polar
        // angle for zonal kinds, over a great circle through the (theta_1,
        // theta_2)-plane for highest-weight (where the sup lives).
        const int m = std::max(target_points, 8 * (k + 1));
        if (grid_spacing)
            *grid_spacing = 2.0 * kPi / m;
        double best = 0.0;
        if (y.kind() == HarmonicFunction::Kind::zonal && n >= 3) {
            // the zonal profile depends only on the angle to the pole
            const double norm = k >= 1 ? std::exp(0.5 * zonal_log_norm2(n, k)) : 1.0;
            for (int q = 0; q < m; ++q) {
                const double c = std::cos(kPi * q / (m - 1));
                const double v = k == 0 ? 1.0 / std::sqrt(sphere_surface_area(n))
                                        : gegenbauer(k, 0.5 * (n - 2), c) / norm;
                best = std::max(best, std::abs(v));
            }
            return best;
        }
        // scan the circle (n = 2) or the great circle in the (theta_1,
        // theta_2)-plane, where the highest-weight sup lives
        std::vector<double> pt(static_cast<std::size_t>(n), 0.0);
        for (int q = 0; q < m; ++q) {
            const double t = 2.0 * kPi * q / m;
            pt[0] = std::cos(t);
            pt[1] = std::sin(t);
            best = std::max(best, std::abs(y.eval(pt)));
        }
        return best;
    }

    if (n != 3)
        throw std::domain_error(
            "estimate_sup_norm: coefficient kinds supported for n in {2,3} only");

    const int n_azimuth = next_pow2(std::max(64, 2 * (k + 1)));
    const int n_polar = std::max(std::max(33, 2 * k + 1),
                                 target_points / std::max(1, n_azimuth));
    SupNormGrid grid(k, n_polar, n_azimuth);
    if (grid_spacing)
        *grid_spacing = grid.grid_spacing();

    if (y.kind() == HarmonicFunction::Kind::random)
        return grid.estimate(y.coefficients());
    // basis element: one-hot coefficient vector in the shared layout
    std::vector<double> coeffs(static_cast<std::size_t>(2 * k + 1), 0.0);
    coeffs[static_cast<std::size_t>(y.basis_index())] = 1.0;
    return grid.estimate(coeffs);
}

} // namespace ballharm
