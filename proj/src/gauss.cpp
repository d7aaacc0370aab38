#include "ballharm/gauss.hpp"

#include <cmath>
#include <stdexcept>

#include "ballharm/specfun.hpp"

namespace ballharm {

GaussRule gauss_legendre(int m) {
    if (m < 1)
        throw std::domain_error("gauss_legendre: order must be >= 1");
    GaussRule rule;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    const int half = (m + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (m + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Legendre P_m(x) and derivative by the three-term recurrence.
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= m; ++j) {
                double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15)
                break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.weights[i] = w;
        rule.nodes[m - 1 - i] = x;
        rule.weights[m - 1 - i] = w;
    }
    if (m % 2 == 1) {
        rule.nodes[m / 2] = 0.0; // enforce the exact symmetric node
    }
    return rule;
}

GaussRule gauss_legendre(int m, double a, double b) {
    GaussRule rule = gauss_legendre(m);
    const double mid = 0.5 * (a + b);
    const double halfwidth = 0.5 * (b - a);
    for (int i = 0; i < m; ++i) {
        rule.nodes[i] = mid + halfwidth * rule.nodes[i];
        rule.weights[i] *= halfwidth;
    }
    return rule;
}

} // namespace ballharm
