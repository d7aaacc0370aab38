#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ballharm/harmonics.hpp"
#include "ballharm/sphere.hpp"

namespace ballharm {

/// Sparse coefficient sequences {a_k} supported on dyadic indices.  The
/// stored entries are the base values; `scale` multiplies everything (the
/// series classes keep base and scale separate so rescaling is exact).
class CoefficientSchedule {
public:
    enum class Variant { dyadic_inverse_square, dyadic_holder, hadamard, custom };

    static CoefficientSchedule dyadic_inverse_square(double scale = 1.0);
    static CoefficientSchedule dyadic_holder(double alpha, double scale = 1.0);
    static CoefficientSchedule hadamard(double scale = 1.0);
    static CoefficientSchedule custom(std::vector<std::pair<int, double>> entries,
                                      double scale = 1.0);

    Variant variant() const { return variant_; }
    double scale() const { return scale_; }
    double alpha() const { return alpha_; }

    /// a_k including the scale factor; zero off the variant's support.
    double coefficient(int k) const;
    /// a_k without the scale factor.
    double base_coefficient(int k) const;
    /// Indices k <= k_max with nonzero a_k, ascending.
    std::vector<int> support(int k_max) const;
    /// Analytic bound on sum_{k > k_max} |a_k| (base values, no scale).
    double tail_abs(int k_max) const;

private:
    CoefficientSchedule(Variant v, double alpha, double scale)
        : variant_(v), alpha_(alpha), scale_(scale) {}

    Variant variant_;
    double alpha_;
    double scale_;
    std::vector<std::pair<int, double>> entries_; // custom only, sorted by k
};

/// One retained term a_k r^e Y_k of a ball series, with the sup-norm data
/// needed for certified truncation bounds.  `a` is the base coefficient;
/// the owning series' scale multiplies it at evaluation time.
struct SeriesTerm {
    int k;
    double a;
    HarmonicFunction y;
    double sup_bound; // upper bound (or grid estimate, for random kinds) of |Y_k|
};

/// Truncation of sum_k a_k r^k Y_k(theta) on the closed unit ball, or of its
/// Kelvin transform sum_k a_k r^{2-n-k} Y_k(theta) on {r >= 1}.  Immutable.
class BallSeries {
public:
    enum class Radial { interior, kelvin };
    enum class Variant { notHs, notCbeta, anyn_holder, hadamard_2d, custom };

    struct EvalResult {
        double value;
        double tail_bound;
        bool within_tol;
    };

    int dim() const { return n_; }
    Variant variant() const { return variant_; }
    Radial radial() const { return radial_; }
    double scale() const { return scale_; }
    double alpha() const { return alpha_; }
    std::uint64_t seed() const { return seed_; }
    int k_max() const { return k_max_; }
    const std::vector<SeriesTerm>& terms() const { return terms_; }
    double r_min() const { return r_min_; }
    double r_max() const { return r_max_; }

    /// Certified bound on the sup norm of the omitted tail (includes |scale|).
    double tail_sup_bound() const;
    /// Bound on sum over retained terms of |scale a_k| sup|Y_k| plus the tail
    /// (normal-convergence certificate for the full series).
    double normal_convergence_bound() const;

    /// Evaluate at a point with |x| in the valid radial range; the tail bound
    /// is sharpened by the omitted radial factor when |x| is away from r = 1.
    EvalResult eval(std::span<const double> x, double tol = 1e30) const;
    /// Trace at r = 1 (truncated value; the certified tail is tail_sup_bound).
    double boundary_eval(std::span<const double> theta) const;

    /// Copy with the scale multiplied by `factor` (may be negative).
    BallSeries scaled(double factor) const;

    std::string to_json() const;
    static BallSeries from_json(const std::string& text);

    friend BallSeries build_series(Variant variant, int n, int k_max, double scale,
                                   std::uint64_t seed, double alpha,
                                   std::vector<std::pair<int, double>> custom_entries);
    friend BallSeries kelvin_transform(const BallSeries& u);

private:
    BallSeries() = default;

    int n_ = 0;
    Variant variant_ = Variant::custom;
    Radial radial_ = Radial::interior;
    double scale_ = 1.0;
    double alpha_ = 0.0;
    std::uint64_t seed_ = 0;
    int k_max_ = 0;
    std::vector<SeriesTerm> terms_;
    double base_tail_sup_ = 0.0; // tail bound before scaling
    int k_next_ = 0;             // smallest omitted support index (0 = none)
    double r_min_ = 0.0, r_max_ = 1.0;
};

/// Constructs the named series truncated at k <= k_max.  `seed` is used by
/// the notHs variant (random unit harmonics), `alpha` by anyn_holder, and
/// `custom_entries` by the custom variant (paired with highest-weight
/// harmonics Q_k).
BallSeries build_series(BallSeries::Variant variant, int n, int k_max,
                        double scale = 1.0, std::uint64_t seed = 0,
                        double alpha = 0.0,
                        std::vector<std::pair<int, double>> custom_entries = {});

/// Term-wise Kelvin transform r^k -> r^{2-n-k}; valid on r >= 1.  Returns
/// +u* (no sign change).  Applying it to an already-transformed series is an
/// error: only one Kelvin layer is supported.
BallSeries kelvin_transform(const BallSeries& u);

/// Max over sample points of the (2n+1)-point finite-difference Laplacian
/// residual, divided by a local second-derivative scale of the series.
/// Points must keep distance >= 2h from the radial boundary of validity.
double check_harmonic_fd(const BallSeries& u,
                         const std::vector<std::vector<double>>& points,
                         double h = 1e-3);
/// Same stencil for an arbitrary function; the residual is absolute
/// (local scale 1), so e.g. f = |x|^2 reports ~2n.
double check_harmonic_fd(const std::function<double(std::span<const double>)>& f,
                         int n, const std::vector<std::vector<double>>& points,
                         double h = 1e-3);

/// |spherical average over the sphere of given center/radius - value at the
/// center|; near zero for harmonic functions (mean value property).
double mean_value_check(const BallSeries& u, std::span<const double> center,
                        double radius, const QuadratureRule& rule);
double mean_value_check(const std::function<double(std::span<const double>)>& f,
                        std::span<const double> center, double radius,
                        const QuadratureRule& rule);

} // namespace ballharm
