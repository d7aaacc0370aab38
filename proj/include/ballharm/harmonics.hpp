#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ballharm/sphere.hpp"

namespace ballharm {

/// dim H_k = (2k+n-2)(k+n-3)!/(k!(n-2)!), computed exactly in integer
/// arithmetic as C(n+k-1,k) - C(n+k-3,k-2).  Throws std::overflow_error if
/// the value does not fit in a signed 64-bit integer.
std::int64_t harmonic_dimension(int n, int k);

/// Eigenvalue of the (positive) Laplace-Beltrami operator on S^{n-1} whose
/// eigenspace is H_k: k(k+n-2).
double laplace_beltrami_eigenvalue(int n, int k);

/// Q_k(theta) = Re(theta_1 + i theta_2)^k.  |Q_k| <= 1 on the sphere.
double highest_weight_eval(int n, int k, std::span<const double> theta);

/// ||Q_k||_{L^2(S^{n-1})} = sqrt(pi^{n/2} k! / Gamma(k + n/2)), k >= 1.
/// The closed form is exposed for k >= 1 only: at k = 0 it does not match
/// the measured norm sqrt(|S^{n-1}|) of the constant function 1 (for n = 2
/// it gives pi instead of 2 pi under the square).
double highest_weight_l2_norm(int n, int k);

/// Gegenbauer polynomial C_k^{lambda}(x) by the three-term recurrence.
/// Refuses k > 2^14 (recurrence overflow risk) rather than degrade silently.
double gegenbauer(int k, double lambda, double x);

/// L^2-normalized zonal harmonic Z_k with the given pole, evaluated at theta.
/// n = 2: cos(k * angle)/sqrt(pi); n >= 3: Gegenbauer C_k^{(n-2)/2}(<pole,theta>)
/// divided by its closed-form L^2 norm.
double zonal_eval(int n, int k, const SpherePoint& pole, const SpherePoint& theta);

/// Orthonormal associated Legendre functions Theta_{k,m} on [-1,1]
/// (int Theta^2 dx = 1), all orders m = 0..k at a single argument.
/// out must have size k+1.
void orthonormal_legendre_column(int k, double x, std::span<double> out);

/// All Theta_{k,m} for 0 <= m <= k <= K at a single argument, row-major
/// (out[k*(K+1)+m]); entries with m > k are zeroed.  O(K^2) total.
void orthonormal_legendre_table(int K, double x, std::span<double> out);

/// A spherical harmonic of degree k on S^{n-1}: the restriction of a
/// degree-k homogeneous harmonic polynomial.  Immutable; evaluation is pure.
class HarmonicFunction {
public:
    enum class Kind { highest_weight, zonal, basis_element, random };

    static HarmonicFunction highest_weight(int n, int k);
    static HarmonicFunction zonal(int n, int k, SpherePoint pole);
    /// Element j (0-based, j < d_k) of the orthonormal basis; n in {2,3}.
    static HarmonicFunction basis_element(int n, int k, int j);
    /// Uniform draw from the unit sphere of H_k (Gaussian coefficients over
    /// the orthonormal basis, normalized); n in {2,3}; deterministic in seed.
    static HarmonicFunction random_unit(int n, int k, std::uint64_t seed);

    double eval(std::span<const double> theta) const;
    double eval(const SpherePoint& p) const { return eval(p.coords()); }

    int dim() const { return n_; }
    int degree() const { return k_; }
    Kind kind() const { return kind_; }

    /// Exact L^2(S^{n-1}) norm (1 for zonal/basis/random kinds).
    double l2_norm() const;
    /// Rigorous upper bound on the sup norm.
    double sup_norm_bound() const;

    /// Coefficient vector over the orthonormal basis (random kind only).
    const std::vector<double>& coefficients() const { return coeffs_; }
    /// Basis index (basis_element kind only, -1 otherwise).
    int basis_index() const { return basis_index_; }

private:
    HarmonicFunction(int n, int k, Kind kind) : n_(n), k_(k), kind_(kind) {}

    int n_;
    int k_;
    Kind kind_;
    std::vector<double> pole_;      // zonal
    int basis_index_ = -1;          // basis_element
    std::vector<double> coeffs_;    // random
    double zonal_norm_ = 1.0;       // cached normalization for zonal kind
};

/// Orthonormal basis of H_k for n in {2,3} (size d_k).
std::vector<HarmonicFunction> orthonormal_basis(int n, int k);

/// Dense-grid lower-bound estimate of the sup norm.  For n = 3 the grid is
/// a polar x azimuthal product of roughly `target_points` points; the
/// azimuthal sweep for coefficient-based kinds uses an FFT.
/// If grid_spacing is non-null, the max grid spacing (radians) is stored.
double estimate_sup_norm(const HarmonicFunction& y, int target_points = 1 << 16,
                         double* grid_spacing = nullptr);

/// Reusable sup-norm grid for degree-k harmonics on S^2: precomputes the
/// associated-Legendre values once so that many coefficient vectors
/// (e.g. many random draws of the same degree) can be scanned cheaply.
class SupNormGrid {
public:
    SupNormGrid(int k, int n_polar, int n_azimuth);
    /// coeffs laid out as in HarmonicFunction::coefficients() for n = 3.
    double estimate(std::span<const double> coeffs) const;
    double grid_spacing() const;

private:
    int k_, n_polar_, n_azimuth_;
    std::vector<double> theta_; // n_polar x (k+1)
};

} // namespace ballharm
