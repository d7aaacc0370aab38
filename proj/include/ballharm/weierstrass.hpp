#pragma once

#include "ballharm/series.hpp"

namespace ballharm {

/// Truncation of a lacunary cosine series: sum_j b^{-j alpha} cos(b^j t)
/// (j >= 0) or sum_j cos(b^j t)/j^2 (j >= 1; the j = 0 term is undefined,
/// so this family is indexed from 1 to match the dyadic schedules).
class LacunaryCosineSeries {
public:
    enum class Law { weierstrass, hardy };

    static LacunaryCosineSeries weierstrass(int b, double alpha, int truncation = 52);
    static LacunaryCosineSeries hardy(int b, int truncation = 52);

    struct EvalResult {
        double value;
        double tail_bound;
        bool within_tol;
    };

    /// Truncated value with the analytic remainder (geometric for the
    /// weierstrass law, integral bound 1/J for hardy).  Terms whose frequency
    /// b^j would exceed 2^52 are folded into the tail rather than evaluated
    /// with meaningless rounded arguments.
    EvalResult eval(double t, double tol = 1e30) const;

    int base() const { return b_; }
    Law law() const { return law_; }
    double alpha() const { return alpha_; }
    int truncation() const { return truncation_; }
    /// Amplitude of term j (b^{-j alpha}, or j^{-2} for hardy with j >= 1).
    double amplitude(int j) const;

private:
    LacunaryCosineSeries(Law law, int b, double alpha, int truncation);

    Law law_;
    int b_;
    double alpha_;
    int truncation_;    // requested J
    int effective_;     // terms actually evaluated (frequency <= 2^52)
    double extra_tail_; // amplitude mass of the folded terms
};

/// Explicit Holder constant C with |f(t+d) - f(t)| <= C |d|^alpha for |d| < 1
/// for the weierstrass-law series: C = 1/(1 - b^{alpha-1}) + 2/(1 - b^{-alpha}).
double holder_bound_constant(int b, double alpha);

/// u restricted to the circle t -> (cos t, sin t, 0, ..., 0) on S^{n-1}
/// (truncated boundary trace).
double circle_lift(const BallSeries& u, double t);

} // namespace ballharm
