#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ballharm {

inline constexpr double kPi = std::numbers::pi;

/// log Gamma(x) for x > 0.  All factorial and Gamma ratios in this library
/// go through here so that quantities like k!/Gamma(k+n/2) stay finite in
/// log space for k up to 2^20.
inline double log_gamma(double x) {
    if (!(x > 0.0))
        throw std::domain_error("log_gamma: argument must be positive");
    return std::lgamma(x);
}

/// Volume of the unit ball in R^n: pi^{n/2} / Gamma(n/2 + 1).
inline double unit_ball_volume(int n) {
    if (n < 1)
        throw std::domain_error("unit_ball_volume: n must be >= 1");
    return std::exp(0.5 * n * std::log(kPi) - log_gamma(0.5 * n + 1.0));
}

/// Surface area of the unit sphere S^{n-1} in R^n: 2 pi^{n/2} / Gamma(n/2).
inline double sphere_surface_area(int n) {
    if (n < 1)
        throw std::domain_error("sphere_surface_area: n must be >= 1");
    return 2.0 * std::exp(0.5 * n * std::log(kPi) - log_gamma(0.5 * n));
}

} // namespace ballharm
