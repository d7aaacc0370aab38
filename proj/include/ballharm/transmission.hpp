#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ballharm/regularity.hpp"
#include "ballharm/series.hpp"
#include "ballharm/sphere.hpp"

namespace ballharm {

/// The fixed nonlinearity: psi(t) = t for |t| <= 1, t^3 for |t| > 1.
/// Continuous, odd, strictly increasing.
double psi_eval(double t);

/// Smooth compactly supported test function
/// phi(x) = exp(1 - 1/(1 - |x-c|^2/r^2)) inside the support ball, 0 outside,
/// with closed-form gradient and Laplacian.
class BumpTestFunction {
public:
    BumpTestFunction(std::vector<double> center, double radius);

    double value(std::span<const double> x) const;
    std::vector<double> gradient(std::span<const double> x) const;
    double laplacian(std::span<const double> x) const;

    int dim() const { return static_cast<int>(center_.size()); }
    const std::vector<double>& center() const { return center_; }
    double radius() const { return radius_; }

private:
    // s = |x-c|^2 / r^2, clipped; returns false outside the open support
    bool support_param(std::span<const double> x, double& s) const;

    std::vector<double> center_;
    double radius_;
};

/// Certificate for the growth conditions |F(theta,t)| >= c1 |t|^3 - 1/c1 and
/// |G(theta,t)| <= c2 (delta2 = 0 makes the right side the constant c2).
struct GrowthCertificate {
    double c1 = 0.0, c2 = 0.0;
    double delta1 = 3.0, delta2 = 0.0;
    double M = 0.0;          // sup bound on |Phi|
    double worst_slack_f = 0.0; // min over the grid of |F| - c1|t|^3 + 1/c1
    double worst_slack_g = 0.0; // min over the grid of c2 - |G|
    bool ok = false;
    std::vector<double> witness_theta; // violating point, if any
    double witness_t = 0.0;

    std::string to_json() const;
};

/// An explicit transmission pair on Omega = 2B_n, omega = B_n:
/// interior harmonic u^i = sum rho a_k r^k Y_k, exterior u^o = -Kelvin(u^i),
/// data F(theta,t) = psi(t) - 2 Phi(theta), G = (n-2) Phi, h = u^o on 2S^{n-1}.
class TransmissionInstance {
public:
    enum class Variant { example, tilde, holder };

    /// rho < 0 selects the default (1 - 1e-3)/M so that sup|Phi| stays below
    /// 1 and psi acts as the identity on the trace range.  `seed` feeds the
    /// example variant's random harmonics; `alpha` the holder variant.
    static TransmissionInstance build(Variant variant, int n, int K,
                                      double rho = -1.0, std::uint64_t seed = 0,
                                      double alpha = 0.5);

    int dim() const { return n_; }
    Variant variant() const { return variant_; }
    double rho() const { return rho_; }
    int truncation() const { return K_; }
    double alpha() const { return alpha_; }
    std::uint64_t seed() const { return seed_; }

    const BallSeries& interior() const { return interior_; }
    const BallSeries& exterior() const { return exterior_; }

    /// Closed-form sup bound on |Phi| for the full (untruncated) series,
    /// including rho: rho pi^2/6 for tilde, rho/(2^alpha - 1) for holder,
    /// rho times the empirical certificate for example.
    double certificate_M() const { return rho_ * base_M_; }

    /// Truncated trace value Phi(theta) with certified tail <= tol enforced.
    double phi(std::span<const double> theta, double tol = 1e30) const;
    /// (F, G) at (theta, t).
    std::pair<double, double> F_G(std::span<const double> theta, double t) const;
    /// Dirichlet datum h on 2 S^{n-1} from the explicit coefficient formula
    /// -sum rho a_k 2^{2-n-k} Y_k.
    double h(std::span<const double> x) const;
    /// Solves t + F(theta, t) = y on the monotone map (closed form per branch,
    /// polished by Newton to |residual| <= tol).
    double invert_id_plus_F(std::span<const double> theta, double y,
                            double tol = 1e-12) const;

    /// Third-condition residual of the *unscaled* (rho = 1) family at the
    /// maximizing boundary point, from the analytic full-series value:
    /// |psi(M) - M| = M^3 - M with M = pi^2/6 (tilde) or 1/(2^alpha - 1).
    double rho_one_diagnostic() const;

private:
    TransmissionInstance() = default;

    int n_ = 0;
    Variant variant_ = Variant::tilde;
    double rho_ = 1.0;
    double alpha_ = 0.0;
    std::uint64_t seed_ = 0;
    int K_ = 0;
    double base_M_ = 0.0; // sup bound of |Phi| at rho = 1
    // placeholders; build() replaces both
    BallSeries interior_ = build_series(BallSeries::Variant::custom, 2, 0);
    BallSeries exterior_ = build_series(BallSeries::Variant::custom, 2, 0);
};

/// Verifies both growth inequalities at every grid point; c1 = min(1, 1/(2M)),
/// c2 = (n-2) M with M the instance's certificate bound.
GrowthCertificate certify_growth(const TransmissionInstance& inst,
                                 std::span<const double> t_grid,
                                 const QuadratureRule& theta_grid);

/// Report-only Holder-mapping evidence for condition 3 (holder variant):
/// moduli of Phi, of the G-output, and of the inverse applied to g = 0,
/// all along the circle lift.
struct Condition3Report {
    ModulusTable phi;
    ModulusTable g_output;
    ModulusTable inverse_output;
};
Condition3Report condition3_check(const TransmissionInstance& inst,
                                  std::span<const double> scales,
                                  int sample_count = 20000);

/// The weak normal-derivative jump of Definition-style pairing:
/// integral over the interface of (u^o - u^i)(nu . grad phi) plus volume
/// integrals of u^o Laplacian(phi) over the annulus and u^i Laplacian(phi)
/// over the ball.  phi must be supported strictly inside the outer ball.
double weak_jump_pairing(const BallSeries& uo, const BallSeries& ui,
                         const BumpTestFunction& phi, const AnnulusRule& annulus,
                         const AnnulusRule& ball);

/// Classical jump nu . grad u^o - nu . grad u^i at r = 1, term-analytic.
double classical_jump_eval(const BallSeries& uo, const BallSeries& ui,
                           std::span<const double> theta);

/// Five-condition verification report.
struct VerificationReport {
    struct Condition {
        std::string name;
        double residual = 0.0;
        double tolerance = 0.0;
        bool pass = false;
        std::vector<std::string> witnesses;
    };
    std::vector<Condition> conditions;
    bool all_pass = false;

    std::string to_json() const;
};

struct VerifyTolerances {
    double harmonicity = 1e-4;
    double boundary = 1e-9;   // third and fifth conditions (exact cancellations)
    double pairing = 1e-3;    // fourth condition, relative to max(1, |RHS|)
};

/// Checks (i) harmonicity of u^i, u^o; (ii) u^o = F(., u^i) on the interface;
/// (iii) weak pairing = integral of G(., u^i) phi over the interface for each
/// bump; (iv) u^o = h on the outer boundary; (v) the growth certificate.
VerificationReport verify_instance(const TransmissionInstance& inst,
                                   const std::vector<BumpTestFunction>& bumps,
                                   const VerifyTolerances& tol = {});

/// The standard bump set used by the acceptance runs: five bumps inside the
/// ball, inside the annulus, and crossing the interface at several spots.
std::vector<BumpTestFunction> default_bump_set(int n);

} // namespace ballharm
