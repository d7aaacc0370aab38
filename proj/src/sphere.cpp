#include "ballharm/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ballharm/gauss.hpp"
#include "ballharm/rng.hpp"
#include "ballharm/specfun.hpp"

namespace ballharm {

SpherePoint::SpherePoint(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.size() < 2)
        throw std::domain_error("SpherePoint: dimension must be >= 2");
    double norm2 = 0.0;
    for (double c : coords_)
        norm2 += c * c;
    const double norm = std::sqrt(norm2);
    if (!(norm >= 1e-300))
        throw std::domain_error("SpherePoint: vector norm too small to normalize");
    for (double& c : coords_)
        c /= norm;
}

QuadratureRule build_sphere_quadrature(int n, int resolution, QuadratureMode mode,
                                       std::uint64_t seed) {
    if (n < 2)
        throw std::domain_error("build_sphere_quadrature: n must be >= 2");
    if (resolution < 1)
        throw std::domain_error("build_sphere_quadrature: resolution must be >= 1");

    QuadratureRule rule;
    rule.dim = n;

    if (mode == QuadratureMode::monte_carlo) {
        rule.degree = 0;
        const std::size_t count = static_cast<std::size_t>(resolution);
        const double w = sphere_surface_area(n) / static_cast<double>(count);
        rule.coords.resize(count * static_cast<std::size_t>(n));
        rule.weights.assign(count, w);
        Rng rng(seed);
        for (std::size_t i = 0; i < count; ++i) {
            double norm2 = 0.0;
            do {
                norm2 = 0.0;
                for (int d = 0; d < n; ++d) {
                    const double g = rng.gaussian();
                    rule.coords[i * n + static_cast<std::size_t>(d)] = g;
                    norm2 += g * g;
                }
            } while (norm2 < 1e-290);
            const double inv = 1.0 / std::sqrt(norm2);
            for (int d = 0; d < n; ++d)
                rule.coords[i * n + static_cast<std::size_t>(d)] *= inv;
        }
        return rule;
    }

    if (n > 3)
        throw std::domain_error(
            "build_sphere_quadrature: product rules are available for n in {2,3} only");

    rule.degree = resolution;
    if (n == 2) {
        const int m = resolution + 1; // exact for trig degree <= m-1
        rule.coords.resize(static_cast<std::size_t>(m) * 2);
        rule.weights.assign(static_cast<std::size_t>(m), 2.0 * kPi / m);
        for (int q = 0; q < m; ++q) {
            const double t = 2.0 * kPi * q / m;
            rule.coords[2 * static_cast<std::size_t>(q)] = std::cos(t);
            rule.coords[2 * static_cast<std::size_t>(q) + 1] = std::sin(t);
        }
        QuadratureRule::ProductInfo info;
        info.n_polar = 1;
        info.n_azimuth = m;
        info.polar_cos = {0.0};
        info.polar_weight = {1.0};
        info.azimuth_weight = 2.0 * kPi / m;
        rule.product = std::move(info);
        return rule;
    }

    // n == 3: Gauss in cos(theta) times uniform azimuth.
    const int n_polar = resolution / 2 + 1;  // 2*n_polar - 1 >= resolution
    const int n_azimuth = resolution + 1;
    GaussRule polar = gauss_legendre(n_polar);
    const double wq = 2.0 * kPi / n_azimuth;

    const std::size_t count = static_cast<std::size_t>(n_polar) * n_azimuth;
    rule.coords.resize(count * 3);
    rule.weights.resize(count);
    for (int p = 0; p < n_polar; ++p) {
        const double c = polar.nodes[static_cast<std::size_t>(p)];
        const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
        for (int q = 0; q < n_azimuth; ++q) {
            const double phi = 2.0 * kPi * q / n_azimuth;
            const std::size_t i = static_cast<std::size_t>(p) * n_azimuth + q;
            rule.coords[3 * i] = s * std::cos(phi);
            rule.coords[3 * i + 1] = s * std::sin(phi);
            rule.coords[3 * i + 2] = c;
            rule.weights[i] = polar.weights[static_cast<std::size_t>(p)] * wq;
        }
    }
    QuadratureRule::ProductInfo info;
    info.n_polar = n_polar;
    info.n_azimuth = n_azimuth;
    info.polar_cos = std::move(polar.nodes);
    info.polar_weight = std::move(polar.weights);
    info.azimuth_weight = wq;
    rule.product = std::move(info);
    return rule;
}

namespace {

void append_radial_gauss(AnnulusRule& rule, int n, double a, double b, int order) {
    GaussRule g = gauss_legendre(order, a, b);
    for (int i = 0; i < order; ++i) {
        const double r = g.nodes[static_cast<std::size_t>(i)];
        rule.radial_nodes.push_back(r);
        rule.radial_weights.push_back(g.weights[static_cast<std::size_t>(i)] *
                                      std::pow(r, n - 1));
    }
}

} // namespace

AnnulusRule build_annulus_rule(int n, double r_in, double r_out, int radial_order,
                               QuadratureRule angular) {
    if (n < 2)
        throw std::domain_error("build_annulus_rule: n must be >= 2");
    if (!(0.0 <= r_in && r_in < r_out))
        throw std::domain_error("build_annulus_rule: need 0 <= r_in < r_out");
    if (angular.dim != n)
        throw std::domain_error("build_annulus_rule: angular rule dimension mismatch");
    AnnulusRule rule;
    rule.dim = n;
    rule.r_inner = r_in;
    rule.r_outer = r_out;
    rule.angular = std::move(angular);
    append_radial_gauss(rule, n, r_in, r_out, radial_order);
    return rule;
}

AnnulusRule build_annulus_rule_graded(int n, double r_in, double r_out, double focus,
                                      double scale, int panel_order,
                                      QuadratureRule angular) {
    if (!(0.0 <= r_in && r_in < r_out))
        throw std::domain_error("build_annulus_rule_graded: need 0 <= r_in < r_out");
    if (!(scale >= 1.0))
        throw std::domain_error("build_annulus_rule_graded: scale must be >= 1");
    AnnulusRule rule;
    rule.dim = n;
    rule.r_inner = r_in;
    rule.r_outer = r_out;
    rule.angular = std::move(angular);

    // Dyadic panels shrinking towards `focus`; the smallest has width ~1/scale
    // so that exp-like boundary layers of that width are resolved.
    const double min_width = 1.0 / scale;
    auto add_panels = [&](double from, double to, bool focus_at_from) {
        const double len = to - from;
        if (len <= 0.0)
            return;
        // Panel edges from the focus outward: widths min, 2*min, 4*min, ...
        std::vector<double> edges;
        edges.push_back(0.0);
        double width = std::min(min_width, len);
        double pos = 0.0;
        while (pos + width < len) {
            pos += width;
            edges.push_back(pos);
            width *= 2.0;
        }
        edges.push_back(len);
        for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
            double a, b;
            if (focus_at_from) {
                a = from + edges[i];
                b = from + edges[i + 1];
            } else {
                a = to - edges[i + 1];
                b = to - edges[i];
            }
            append_radial_gauss(rule, n, a, b, panel_order);
        }
    };

    if (focus <= r_in) {
        add_panels(r_in, r_out, true);
    } else if (focus >= r_out) {
        add_panels(r_in, r_out, false);
    } else {
        add_panels(r_in, focus, false);
        add_panels(focus, r_out, true);
    }
    std::vector<std::size_t> idx(rule.radial_nodes.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return rule.radial_nodes[a] < rule.radial_nodes[b];
    });
    std::vector<double> rn, rw;
    rn.reserve(idx.size());
    rw.reserve(idx.size());
    for (std::size_t i : idx) {
        rn.push_back(rule.radial_nodes[i]);
        rw.push_back(rule.radial_weights[i]);
    }
    rule.radial_nodes = std::move(rn);
    rule.radial_weights = std::move(rw);
    return rule;
}

} // namespace ballharm
