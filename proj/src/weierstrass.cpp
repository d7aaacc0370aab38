#include "ballharm/weierstrass.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ballharm/specfun.hpp"

namespace ballharm {

LacunaryCosineSeries::LacunaryCosineSeries(Law law, int b, double alpha,
                                           int truncation)
    : law_(law), b_(b), alpha_(alpha), truncation_(truncation) {
    if (b < 2)
        throw std::domain_error("LacunaryCosineSeries: base must be an integer >= 2");
    if (truncation < 1)
        throw std::domain_error("LacunaryCosineSeries: truncation must be >= 1");
    // largest j with b^j <= 2^52 (exactly representable, accurate cos args)
    int j_cap = 0;
    double freq = 1.0;
    while (freq * b <= 0x1.0p52) {
        freq *= b;
        ++j_cap;
    }
    effective_ = std::min(truncation_, j_cap);
    extra_tail_ = 0.0;
    if (effective_ < truncation_) {
        // amplitude mass of the skipped terms j in (effective, truncation)
        if (law_ == Law::weierstrass)
            extra_tail_ = std::pow(b_, -alpha_ * effective_) /
                          (1.0 - std::pow(b_, -alpha_));
        else
            extra_tail_ = 1.0 / effective_;
    }
}

LacunaryCosineSeries LacunaryCosineSeries::weierstrass(int b, double alpha,
                                                       int truncation) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("LacunaryCosineSeries: alpha must lie in (0,1)");
    return LacunaryCosineSeries(Law::weierstrass, b, alpha, truncation);
}

LacunaryCosineSeries LacunaryCosineSeries::hardy(int b, int truncation) {
    return LacunaryCosineSeries(Law::hardy, b, 0.0, truncation);
}

double LacunaryCosineSeries::amplitude(int j) const {
    if (law_ == Law::weierstrass) {
        if (j < 0)
            throw std::domain_error("LacunaryCosineSeries: j must be >= 0");
        return std::pow(b_, -alpha_ * j);
    }
    if (j < 1)
        throw std::domain_error("LacunaryCosineSeries: hardy terms start at j = 1");
    return 1.0 / (static_cast<double>(j) * j);
}

LacunaryCosineSeries::EvalResult LacunaryCosineSeries::eval(double t,
                                                            double tol) const {
    if (!(tol > 0.0))
        throw std::domain_error("LacunaryCosineSeries::eval: tol must be positive");
    double acc = 0.0;
    double freq = law_ == Law::weierstrass ? 1.0 : static_cast<double>(b_);
    const int j_lo = law_ == Law::weierstrass ? 0 : 1;
    for (int j = j_lo; j < j_lo + effective_; ++j) {
        acc += amplitude(j) * std::cos(freq * t);
        freq *= b_;
    }
    double tail;
    if (extra_tail_ > 0.0) {
        tail = extra_tail_; // already the full remainder past `effective_`
    } else if (law_ == Law::weierstrass) {
        tail = std::pow(b_, -alpha_ * truncation_) / (1.0 - std::pow(b_, -alpha_));
    } else {
        tail = 1.0 / truncation_;
    }
    return EvalResult{acc, tail, tail <= tol};
}

double holder_bound_constant(int b, double alpha) {
    if (b < 2)
        throw std::domain_error("holder_bound_constant: base must be >= 2");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("holder_bound_constant: alpha must lie in (0,1)");
    const double bd = static_cast<double>(b);
    return 1.0 / (1.0 - std::pow(bd, alpha - 1.0)) +
           2.0 / (1.0 - std::pow(bd, -alpha));
}

double circle_lift(const BallSeries& u, double t) {
    std::vector<double> theta(static_cast<std::size_t>(u.dim()), 0.0);
    theta[0] = std::cos(t);
    theta[1] = std::sin(t);
    return u.boundary_eval(theta);
}

} // namespace ballharm
