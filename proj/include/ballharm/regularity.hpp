#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ballharm/series.hpp"
#include "ballharm/sphere.hpp"

namespace ballharm {

/// Inner products <u, Y_{k,j}> for all degrees k <= K against the
/// orthonormal basis (n in {2,3}), computed by surface quadrature.
struct SpectralCoefficients {
    int n = 0;
    int K = 0;
    std::vector<std::vector<double>> by_degree; // [k][j], j < d_k

    /// sum_j |<u, Y_{k,j}>|^2
    double degree_power(int k) const;
};

/// Requires a product rule of polynomial exactness >= 2K (refused otherwise:
/// no silent aliasing).
SpectralCoefficients
spectral_coefficients(const std::function<double(std::span<const double>)>& u, int n,
                      int K, const QuadratureRule& rule);

/// Result of scanning the spectral Sobolev sums S_K(sigma) =
/// sum_{k<=K} (k(k+n-2))^sigma sum_j |<u,Y_{k,j}>|^2 over dyadic blocks.
struct SobolevScan {
    enum class Verdict { convergent, divergent, divergent_marginal, inconclusive };

    struct Block {
        int j;               // block index (k = 2^j, or 4^j for hadamard)
        long long K;         // block frequency
        double S_K;          // partial sum through this block
        double increment;    // this block's term
        double compensated_ratio; // ratio of modulation-compensated increments
                                  // to the previous block (NaN for the first)
    };

    double sigma = 0.0;
    std::vector<Block> blocks;
    Verdict verdict = Verdict::inconclusive;
    double fitted_exponent = 0.0; // log2 growth per block of compensated increments
    double r_squared = 0.0;
    double limit_estimate = 0.0;  // NaN unless verdict == convergent

    std::string to_json() const;
};

/// Exact (quadrature-free) partial sum for a schedule-backed series:
/// sum_j |<u,Y_{k,j}>|^2 = a_k^2 ||Y_k||_2^2 term by term.
double sobolev_partial_sum(const BallSeries& u, double sigma, long long K);

/// Scans S_K(sigma) for each sigma over the series' dyadic blocks up to
/// K_max.  Increments are compensated for the schedule's known polynomial
/// modulation (the j^{-4} factor of the inverse-square schedules) before the
/// geometric-ratio fit, so the reported ratio isolates the 2^{2(sigma-...)}
/// growth; verdicts use the fitted slope with an R^2 >= 0.99 gate and fall
/// back to the exact p-series behaviour in the marginal band.
std::vector<SobolevScan> classify_sobolev(const BallSeries& u,
                                          std::span<const double> sigma_grid,
                                          long long K_max);

enum class EnergyMode { formula, quadrature };

/// Dirichlet energy of the degree-<=K truncation of an n = 2 series
/// sum a_k r^k cos(k t): formula mode returns pi * sum k a_k^2; quadrature
/// mode integrates |grad u_K|^2 over the disk with a radially graded rule.
double dirichlet_energy_2d(const BallSeries& u, int K, EnergyMode mode);

/// Empirical modulus of continuity of a 2 pi-periodic function.
struct ModulusTable {
    std::vector<double> delta;  // ascending
    std::vector<double> omega;  // running maxima, non-decreasing
    double fitted_alpha = 0.0;  // log-log slope, inner scales only
    double fit_residual = 0.0;  // max abs residual of the fit (log scale)

    std::string to_csv() const; // header "delta,omega"
};

/// omega(delta) = max over `sample_count` random t of |f(t+delta) - f(t)|.
/// The slope fit discards the two largest and two smallest scales.
ModulusTable holder_modulus(const std::function<double(double)>& f,
                            std::span<const double> scales, int sample_count,
                            std::uint64_t seed);

/// Windowed Fourier-decay certificate for samples of a 2 pi-periodic even
/// function at N uniform points (N a power of two): tests |c_k| <= C k^{-alpha}.
struct FourierDecayCertificate {
    struct Window {
        int k_lo, k_hi;  // [k_lo, k_hi)
        double C;        // max |c_k| k^alpha over the window
        int arg_k;       // maximizing k
    };

    double alpha = 0.0;
    int k_max = 0;
    std::vector<double> coeff_abs; // |c_k| for k = 0..k_max
    std::vector<Window> windows;
    bool growing = false;
    // lacunary model |c_{peak_j}| = A j^{-p} base^{-j q'}; growing iff
    // alpha * ln(base) exceeds the fitted geometric rate q = q' ln(base)
    double fitted_p = 0.0;
    double fitted_q = 0.0; // nat-log geometric decay per peak
    double fitted_base = 0.0;

    std::string to_json() const;
};

/// k_max = 0 selects the anti-aliasing default N/4; k_max > N/4 is refused.
FourierDecayCertificate fourier_decay_certificate(std::span<const double> samples,
                                                  double alpha, int k_max = 0);

} // namespace ballharm
