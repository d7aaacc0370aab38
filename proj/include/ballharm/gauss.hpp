#pragma once

#include <utility>
#include <vector>

namespace ballharm {

/// Gauss-Legendre nodes and weights on [-1, 1], exact for polynomials of
/// degree <= 2m - 1.  Newton iteration on the Legendre recurrence; nodes are
/// accurate to ~1e-15 for m up to several thousand.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussRule gauss_legendre(int m);

/// The same rule mapped to [a, b].
GaussRule gauss_legendre(int m, double a, double b);

} // namespace ballharm
