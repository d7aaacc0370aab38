#include "ballharm/transmission.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "ballharm/rng.hpp"
#include "ballharm/specfun.hpp"
#include "ballharm/weierstrass.hpp"

namespace ballharm {

double psi_eval(double t) { return std::abs(t) <= 1.0 ? t : t * t * t; }

BumpTestFunction::BumpTestFunction(std::vector<double> center, double radius)
    : center_(std::move(center)), radius_(radius) {
    if (center_.size() < 2)
        throw std::domain_error("BumpTestFunction: dimension must be >= 2");
    if (!(radius_ > 0.0))
        throw std::domain_error("BumpTestFunction: radius must be positive");
}

bool BumpTestFunction::support_param(std::span<const double> x, double& s) const {
    if (x.size() != center_.size())
        throw std::domain_error("BumpTestFunction: dimension mismatch");
    double d2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - center_[i];
        d2 += d * d;
    }
    s = d2 / (radius_ * radius_);
    // stay clear of the essential singularity at s = 1
    return s < 1.0 - 1e-14;
}

double BumpTestFunction::value(std::span<const double> x) const {
    double s;
    if (!support_param(x, s))
        return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - s));
}

std::vector<double> BumpTestFunction::gradient(std::span<const double> x) const {
    std::vector<double> g(x.size(), 0.0);
    double s;
    if (!support_param(x, s))
        return g;
    const double v = std::exp(1.0 - 1.0 / (1.0 - s));
    const double u = 1.0 - s;
    const double dphi_ds = -v / (u * u);
    const double f = dphi_ds * 2.0 / (radius_ * radius_);
    for (std::size_t i = 0; i < x.size(); ++i)
        g[i] = f * (x[i] - center_[i]);
    return g;
}

double BumpTestFunction::laplacian(std::span<const double> x) const {
    double s;
    if (!support_param(x, s))
        return 0.0;
    const double n = static_cast<double>(center_.size());
    const double v = std::exp(1.0 - 1.0 / (1.0 - s));
    const double u = 1.0 - s;
    const double u2 = u * u;
    const double r2 = radius_ * radius_;
    // phi'(s) = -phi/u^2, phi''(s) = phi (1/u^4 - 2/u^3);
    // |grad s|^2 = 4s/r^2, laplacian s = 2n/r^2
    return v * ((1.0 / (u2 * u2) - 2.0 / (u2 * u)) * 4.0 * s / r2 -
                (1.0 / u2) * 2.0 * n / r2);
}

namespace {

BallSeries::Variant series_variant(TransmissionInstance::Variant v) {
    switch (v) {
    case TransmissionInstance::Variant::example: return BallSeries::Variant::notHs;
    case TransmissionInstance::Variant::tilde: return BallSeries::Variant::notCbeta;
    case TransmissionInstance::Variant::holder: return BallSeries::Variant::anyn_holder;
    }
    throw std::logic_error("series_variant: unknown variant");
}

} // namespace

TransmissionInstance TransmissionInstance::build(Variant variant, int n, int K,
                                                 double rho, std::uint64_t seed,
                                                 double alpha) {
    if (n < 2)
        throw std::domain_error("TransmissionInstance: n must be >= 2");
    if (K < 2)
        throw std::domain_error("TransmissionInstance: K must be >= 2");
    TransmissionInstance inst;
    inst.n_ = n;
    inst.variant_ = variant;
    inst.alpha_ = variant == Variant::holder ? alpha : 0.0;
    inst.seed_ = seed;
    inst.K_ = K;

    // sup bound on |Phi| for the full series at rho = 1
    switch (variant) {
    case Variant::tilde:
        inst.base_M_ = kPi * kPi / 6.0; // Basel sum of j^{-2}
        break;
    case Variant::holder:
        inst.base_M_ = 1.0 / (std::exp2(alpha) - 1.0);
        break;
    case Variant::example: {
        const BallSeries probe =
            build_series(BallSeries::Variant::notHs, n, K, 1.0, seed);
        inst.base_M_ = probe.normal_convergence_bound();
        break;
    }
    }

    inst.rho_ = rho < 0.0 ? (1.0 - 1e-3) / inst.base_M_ : rho;
    if (!(inst.rho_ > 0.0))
        throw std::domain_error("TransmissionInstance: rho must be positive");

    inst.interior_ = build_series(series_variant(variant), n, K, inst.rho_, seed,
                                  inst.alpha_);
    inst.exterior_ = kelvin_transform(inst.interior_).scaled(-1.0);
    return inst;
}

double TransmissionInstance::phi(std::span<const double> theta, double tol) const {
    if (interior_.tail_sup_bound() > tol)
        throw std::domain_error(
            "TransmissionInstance::phi: certified tail exceeds tol at this K");
    return interior_.boundary_eval(theta);
}

std::pair<double, double> TransmissionInstance::F_G(std::span<const double> theta,
                                                    double t) const {
    const double p = interior_.boundary_eval(theta);
    return {psi_eval(t) - 2.0 * p, (n_ - 2) * p};
}

double TransmissionInstance::h(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != n_)
        throw std::domain_error("TransmissionInstance::h: dimension mismatch");
    double r2 = 0.0;
    for (double v : x)
        r2 += v * v;
    const double r = std::sqrt(r2);
    if (std::abs(r - 2.0) > 1e-9)
        throw std::domain_error("TransmissionInstance::h: point must lie on 2 S^{n-1}");
    std::vector<double> theta(x.begin(), x.end());
    for (double& v : theta)
        v /= r;
    double acc = 0.0;
    for (const auto& t : interior_.terms())
        acc += t.a * std::pow(2.0, static_cast<double>(2 - n_ - t.k)) *
               t.y.eval(theta);
    return -interior_.scale() * acc;
}

double TransmissionInstance::invert_id_plus_F(std::span<const double> theta, double y,
                                              double tol) const {
    if (!(tol > 0.0))
        throw std::domain_error("invert_id_plus_F: tol must be positive");
    // t + psi(t) = y + 2 Phi(theta) =: target; t + psi(t) is 2t on [-1,1]
    // and t + t^3 outside, strictly increasing
    const double target = y + 2.0 * interior_.boundary_eval(theta);
    double t;
    if (std::abs(target) <= 2.0) {
        t = 0.5 * target;
    } else {
        t = std::cbrt(target); // Newton on t^3 + t - target
        for (int it = 0; it < 200; ++it) {
            const double f = t * t * t + t - target;
            if (std::abs(f) <= tol)
                break;
            t -= f / (3.0 * t * t + 1.0);
        }
    }
    if (std::abs(t + psi_eval(t) - target) > tol)
        throw std::runtime_error("invert_id_plus_F: iteration did not converge");
    return t;
}

double TransmissionInstance::rho_one_diagnostic() const {
    if (variant_ == Variant::example)
        throw std::domain_error(
            "rho_one_diagnostic: no closed-form boundary maximum for the random "
            "variant");
    const double M = base_M_; // full-series value at theta = e_1
    return std::abs(psi_eval(M) - M);
}

GrowthCertificate certify_growth(const TransmissionInstance& inst,
                                 std::span<const double> t_grid,
                                 const QuadratureRule& theta_grid) {
    if (theta_grid.dim != inst.dim())
        throw std::domain_error("certify_growth: grid dimension mismatch");
    const double M = inst.certificate_M();
    GrowthCertificate cert;
    cert.M = M;
    cert.c1 = std::min(1.0, 1.0 / (2.0 * M));
    cert.c2 = (inst.dim() - 2) * M;
    cert.worst_slack_f = std::numeric_limits<double>::infinity();
    cert.worst_slack_g = std::numeric_limits<double>::infinity();

    const auto& ui = inst.interior();
    for (std::size_t i = 0; i < theta_grid.size(); ++i) {
        const auto theta = theta_grid.node(i);
        const double p = ui.boundary_eval(theta);
        const double slack_g = cert.c2 - std::abs((inst.dim() - 2) * p);
        if (slack_g < cert.worst_slack_g) {
            cert.worst_slack_g = slack_g;
            if (slack_g < -1e-12 && cert.witness_theta.empty())
                cert.witness_theta.assign(theta.begin(), theta.end());
        }
        for (double t : t_grid) {
            const double F = psi_eval(t) - 2.0 * p;
            const double slack_f =
                std::abs(F) - (cert.c1 * std::abs(t * t * t) - 1.0 / cert.c1);
            if (slack_f < cert.worst_slack_f) {
                cert.worst_slack_f = slack_f;
                if (slack_f < -1e-12) {
                    cert.witness_theta.assign(theta.begin(), theta.end());
                    cert.witness_t = t;
                }
            }
        }
    }
    cert.ok = cert.worst_slack_f >= -1e-12 && cert.worst_slack_g >= -1e-12;
    return cert;
}

std::string GrowthCertificate::to_json() const {
    nlohmann::json j;
    j["c1"] = c1;
    j["c2"] = c2;
    j["delta1"] = delta1;
    j["delta2"] = delta2;
    j["M"] = M;
    j["worst_slack_f"] = worst_slack_f;
    j["worst_slack_g"] = worst_slack_g;
    j["ok"] = ok;
    if (!witness_theta.empty()) {
        j["witness_theta"] = witness_theta;
        j["witness_t"] = witness_t;
    }
    return j.dump(2);
}

Condition3Report condition3_check(const TransmissionInstance& inst,
                                  std::span<const double> scales,
                                  int sample_count) {
    const auto& ui = inst.interior();
    const int n = inst.dim();
    auto phi_lift = [&ui](double t) { return circle_lift(ui, t); };
    auto g_lift = [&ui, n](double t) { return (n - 2) * circle_lift(ui, t); };
    auto inv_lift = [&inst, n](double t) {
        std::vector<double> theta(static_cast<std::size_t>(n), 0.0);
        theta[0] = std::cos(t);
        theta[1] = std::sin(t);
        return inst.invert_id_plus_F(theta, 0.0);
    };
    Condition3Report rep;
    rep.phi = holder_modulus(phi_lift, scales, sample_count, 101);
    rep.g_output = holder_modulus(g_lift, scales, sample_count, 102);
    rep.inverse_output = holder_modulus(inv_lift, scales, sample_count, 103);
    return rep;
}

namespace {

// integral of u(x) * laplacian(phi)(x) over the annulus volume, skipping all
// nodes outside the bump support (found per angular ray by solving the
// quadratic |r theta - c|^2 <= radius^2 for r)
double volume_term(const BallSeries& u, const BumpTestFunction& phi,
                   const AnnulusRule& rule) {
    const int n = rule.dim;
    const auto& c = phi.center();
    double c2 = 0.0;
    for (double v : c)
        c2 += v * v;
    const double rb2 = phi.radius() * phi.radius();

    std::vector<double> x(static_cast<std::size_t>(n));
    double acc = 0.0;
    const auto& ang = rule.angular;
    for (std::size_t ia = 0; ia < ang.size(); ++ia) {
        const auto theta = ang.node(ia);
        double dot = 0.0;
        for (int d = 0; d < n; ++d)
            dot += theta[static_cast<std::size_t>(d)] * c[static_cast<std::size_t>(d)];
        const double disc = dot * dot - (c2 - rb2);
        if (disc <= 0.0)
            continue;
        const double sq = std::sqrt(disc);
        const double r_lo = dot - sq, r_hi = dot + sq;
        auto first = std::lower_bound(rule.radial_nodes.begin(),
                                      rule.radial_nodes.end(), r_lo);
        double ray = 0.0;
        for (auto it = first; it != rule.radial_nodes.end() && *it < r_hi; ++it) {
            const double r = *it;
            const std::size_t ir =
                static_cast<std::size_t>(it - rule.radial_nodes.begin());
            for (int d = 0; d < n; ++d)
                x[static_cast<std::size_t>(d)] =
                    r * theta[static_cast<std::size_t>(d)];
            const double lap = phi.laplacian(x);
            if (lap == 0.0)
                continue;
            ray += rule.radial_weights[ir] * u.eval(x).value * lap;
        }
        acc += ang.weights[ia] * ray;
    }
    return acc;
}

} // namespace

double weak_jump_pairing(const BallSeries& uo, const BallSeries& ui,
                         const BumpTestFunction& phi, const AnnulusRule& annulus,
                         const AnnulusRule& ball) {
    const int n = ui.dim();
    if (uo.dim() != n || phi.dim() != n || annulus.dim != n || ball.dim != n)
        throw std::domain_error("weak_jump_pairing: dimension mismatch");
    if (uo.radial() != BallSeries::Radial::kelvin ||
        ui.radial() != BallSeries::Radial::interior)
        throw std::domain_error(
            "weak_jump_pairing: expected (exterior, interior) series pair");
    double c_norm = 0.0;
    for (double v : phi.center())
        c_norm += v * v;
    c_norm = std::sqrt(c_norm);
    if (c_norm + phi.radius() >= 2.0 - 1e-12)
        throw std::domain_error(
            "weak_jump_pairing: bump support touches the outer boundary");

    // interface term: (u^o - u^i)(nu . grad phi) over S^{n-1}, nu = theta
    const auto& surf = ball.angular;
    const auto& c = phi.center();
    const double rb2 = phi.radius() * phi.radius();
    double surface = 0.0;
    for (std::size_t i = 0; i < surf.size(); ++i) {
        const auto theta = surf.node(i);
        double d2 = 0.0;
        for (int d = 0; d < n; ++d) {
            const double dd =
                theta[static_cast<std::size_t>(d)] - c[static_cast<std::size_t>(d)];
            d2 += dd * dd;
        }
        if (d2 >= rb2)
            continue;
        const auto grad = phi.gradient(theta);
        double nu_grad = 0.0;
        for (int d = 0; d < n; ++d)
            nu_grad +=
                theta[static_cast<std::size_t>(d)] * grad[static_cast<std::size_t>(d)];
        if (nu_grad == 0.0)
            continue;
        const double jump_tr = uo.boundary_eval(theta) - ui.boundary_eval(theta);
        surface += surf.weights[i] * jump_tr * nu_grad;
    }

    return surface + volume_term(uo, phi, annulus) + volume_term(ui, phi, ball);
}

double classical_jump_eval(const BallSeries& uo, const BallSeries& ui,
                           std::span<const double> theta) {
    auto radial_derivative = [&theta](const BallSeries& u) {
        const bool interior = u.radial() == BallSeries::Radial::interior;
        double acc = 0.0;
        for (const auto& t : u.terms()) {
            const double e = interior ? static_cast<double>(t.k)
                                      : static_cast<double>(2 - u.dim() - t.k);
            acc += t.a * e * t.y.eval(theta);
        }
        return u.scale() * acc;
    };
    return radial_derivative(uo) - radial_derivative(ui);
}

namespace {

std::vector<double> random_direction(Rng& rng, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    double norm2 = 0.0;
    do {
        norm2 = 0.0;
        for (double& x : v) {
            x = rng.gaussian();
            norm2 += x * x;
        }
    } while (norm2 < 1e-290);
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& x : v)
        x *= inv;
    return v;
}

std::string point_string(std::span<const double> x) {
    std::string s = "(";
    char buf[32];
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%s%.6g", i ? ", " : "", x[i]);
        s += buf;
    }
    return s + ")";
}

} // namespace

std::vector<BumpTestFunction> default_bump_set(int n) {
    if (n < 2)
        throw std::domain_error("default_bump_set: n must be >= 2");
    auto vec = [n](double a, double b) {
        std::vector<double> v(static_cast<std::size_t>(n), 0.0);
        v[0] = a;
        v[1] = b;
        return v;
    };
    std::vector<BumpTestFunction> bumps;
    bumps.emplace_back(vec(0.3, 0.0), 0.25);                         // inside omega
    bumps.emplace_back(vec(1.4, 0.0), 0.3);                          // inside annulus
    bumps.emplace_back(vec(1.0, 0.0), 0.35);                         // crossing
    bumps.emplace_back(vec(0.0, 1.05), 0.3);                         // crossing
    bumps.emplace_back(vec(1.02 * std::cos(2.1), 1.02 * std::sin(2.1)), 0.28);
    return bumps;
}

VerificationReport verify_instance(const TransmissionInstance& inst,
                                   const std::vector<BumpTestFunction>& bumps,
                                   const VerifyTolerances& tol) {
    const int n = inst.dim();
    const auto& ui = inst.interior();
    const auto& uo = inst.exterior();
    VerificationReport rep;

    // (i) harmonicity of both series, finite-difference stencil
    {
        Rng rng(0xA11CEull);
        const double h = 1e-3;
        std::vector<std::vector<double>> in_pts, out_pts;
        for (int i = 0; i < 25; ++i) {
            auto dir = random_direction(rng, n);
            const double r_in = rng.uniform(0.2, 0.85);
            const double r_out = rng.uniform(1.15, 1.85);
            std::vector<double> pi(dir), po(dir);
            for (int d = 0; d < n; ++d) {
                pi[static_cast<std::size_t>(d)] *= r_in;
                po[static_cast<std::size_t>(d)] *= r_out;
            }
            in_pts.push_back(std::move(pi));
            out_pts.push_back(std::move(po));
        }
        const double res = std::max(check_harmonic_fd(ui, in_pts, h),
                                    check_harmonic_fd(uo, out_pts, h));
        rep.conditions.push_back(
            {"harmonicity", res, tol.harmonicity, res <= tol.harmonicity, {}});
    }

    // (ii) interface composition u^o = F(., u^i) on S^{n-1}
    {
        Rng rng(0xB0B5ull);
        double worst = 0.0;
        std::vector<double> witness;
        auto probe = [&](std::span<const double> theta) {
            const double tr_i = ui.boundary_eval(theta);
            const double tr_o = uo.boundary_eval(theta);
            const auto [F, G] = inst.F_G(theta, tr_i);
            (void)G;
            const double r = std::abs(tr_o - F);
            if (r > worst) {
                worst = r;
                witness.assign(theta.begin(), theta.end());
            }
        };
        std::vector<double> e1(static_cast<std::size_t>(n), 0.0);
        e1[0] = 1.0;
        probe(e1); // the maximizing point of the Q_k variants
        for (int i = 0; i < 200; ++i)
            probe(random_direction(rng, n));
        VerificationReport::Condition cond{"interface_composition", worst,
                                           tol.boundary, worst <= tol.boundary, {}};
        if (!cond.pass) {
            cond.witnesses.push_back("theta = " + point_string(witness));
            if (inst.variant() != TransmissionInstance::Variant::example)
                cond.witnesses.push_back(
                    "diagnostic: with rho = 1 the full-series residual at the "
                    "maximizing point is |psi(M) - M| = " +
                    std::to_string(inst.rho_one_diagnostic()) +
                    " (sup|Phi| > 1 breaks the identity branch of psi); "
                    "rescale with the default rho");
        }
        rep.conditions.push_back(std::move(cond));
    }

    // (iii) weak jump pairing vs integral of G(., u^i) phi over the interface
    {
        int k_eff = 1;
        for (const auto& t : ui.terms())
            k_eff = std::max(k_eff, t.k);
        const int ang_res = 2 * k_eff + 512;
        QuadratureRule angular =
            build_sphere_quadrature(n, ang_res, QuadratureMode::product);
        AnnulusRule ball = build_annulus_rule_graded(n, 0.0, 1.0, 1.0,
                                                     2.0 * k_eff, 96, angular);
        AnnulusRule annulus = build_annulus_rule_graded(n, 1.0, 2.0, 1.0,
                                                        2.0 * k_eff, 96,
                                                        std::move(angular));
        double worst = 0.0;
        std::vector<std::string> witnesses;
        for (std::size_t bi = 0; bi < bumps.size(); ++bi) {
            const auto& bump = bumps[bi];
            const double lhs = weak_jump_pairing(uo, ui, bump, annulus, ball);
            // RHS: (n-2) * integral of Phi_K phi over S^{n-1}
            double rhs = 0.0;
            if (n != 2) {
                const auto& surf = ball.angular;
                for (std::size_t i = 0; i < surf.size(); ++i) {
                    const auto theta = surf.node(i);
                    const double v = bump.value(theta);
                    if (v == 0.0)
                        continue;
                    rhs += surf.weights[i] * ui.boundary_eval(theta) * v;
                }
                rhs *= static_cast<double>(n - 2);
            }
            const double res = std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
            if (res > worst)
                worst = res;
            if (res > tol.pairing)
                witnesses.push_back("bump " + std::to_string(bi) + " at " +
                                    point_string(bump.center()) + ": pairing " +
                                    std::to_string(lhs) + " vs " +
                                    std::to_string(rhs));
        }
        rep.conditions.push_back({"weak_jump_pairing", worst, tol.pairing,
                                  worst <= tol.pairing, std::move(witnesses)});
    }

    // (iv) outer Dirichlet datum u^o = h on 2 S^{n-1}
    {
        Rng rng(0xD1D0ull);
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            auto theta = random_direction(rng, n);
            std::vector<double> x(theta);
            for (double& v : x)
                v *= 2.0;
            worst = std::max(worst, std::abs(uo.eval(x).value - inst.h(x)));
        }
        rep.conditions.push_back(
            {"outer_boundary", worst, tol.boundary, worst <= tol.boundary, {}});
    }

    // (v) growth certificate
    {
        std::vector<double> t_grid;
        for (double t = -10.0; t <= 10.0 + 1e-9; t += 0.1)
            t_grid.push_back(t);
        QuadratureRule theta_grid =
            n <= 3 ? build_sphere_quadrature(n, 64, QuadratureMode::product)
                   : build_sphere_quadrature(n, 500, QuadratureMode::monte_carlo, 17);
        const GrowthCertificate cert = certify_growth(inst, t_grid, theta_grid);
        const double res =
            std::max(0.0, -std::min(cert.worst_slack_f, cert.worst_slack_g));
        std::vector<std::string> witnesses;
        if (!cert.ok)
            witnesses.push_back("slack violated at theta = " +
                                point_string(cert.witness_theta) +
                                ", t = " + std::to_string(cert.witness_t));
        rep.conditions.push_back(
            {"growth_certificate", res, 1e-12, cert.ok, std::move(witnesses)});
    }

    rep.all_pass = true;
    for (const auto& c : rep.conditions)
        rep.all_pass = rep.all_pass && c.pass;
    return rep;
}

std::string VerificationReport::to_json() const {
    nlohmann::json j;
    nlohmann::json conds = nlohmann::json::array();
    for (const auto& c : conditions)
        conds.push_back({{"name", c.name},
                         {"residual", c.residual},
                         {"tolerance", c.tolerance},
                         {"pass", c.pass},
                         {"witnesses", c.witnesses}});
    j["conditions"] = std::move(conds);
    j["all_pass"] = all_pass;
    return j.dump(2);
}

} // namespace ballharm
