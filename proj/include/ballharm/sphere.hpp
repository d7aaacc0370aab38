#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace ballharm {

/// A point on the unit sphere S^{n-1}.  Construction normalizes the input
/// vector; vectors with norm below 1e-300 are rejected.
class SpherePoint {
public:
    explicit SpherePoint(std::vector<double> coords);

    int dim() const { return static_cast<int>(coords_.size()); }
    std::span<const double> coords() const { return coords_; }
    double operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }

private:
    std::vector<double> coords_;
};

enum class QuadratureMode { product, monte_carlo };

/// Weighted node set on S^{n-1} integrating against the surface measure.
/// degree is the polynomial exactness of the rule (0 = Monte Carlo, no
/// exactness claim).  Nodes are stored as a flat row-major buffer.
class QuadratureRule {
public:
    int dim = 0;
    int degree = 0;
    std::vector<double> coords;  // size() * dim entries
    std::vector<double> weights; // all positive, sum = |S^{n-1}|

    /// Product structure, present for product-mode rules in n = 2, 3.  The
    /// node ordering is polar-major: node index = p * n_azimuth + q.
    struct ProductInfo {
        int n_polar = 1;      // 1 for n = 2
        int n_azimuth = 0;
        std::vector<double> polar_cos;    // Gauss nodes in cos(theta), n = 3
        std::vector<double> polar_weight; // Gauss weights
        double azimuth_weight = 0.0;      // uniform azimuthal weight
    };
    std::optional<ProductInfo> product;

    std::size_t size() const { return weights.size(); }
    std::span<const double> node(std::size_t i) const {
        return {coords.data() + i * static_cast<std::size_t>(dim),
                static_cast<std::size_t>(dim)};
    }

    template <class F>
    double integrate(F&& f) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < size(); ++i)
            acc += weights[i] * f(node(i));
        return acc;
    }
};

/// Product rule (n in {2,3}) exact for spherical polynomials of degree
/// <= resolution, or uniform Monte Carlo samples for any n >= 2 (degree 0).
QuadratureRule build_sphere_quadrature(int n, int resolution, QuadratureMode mode,
                                       std::uint64_t seed = 0);

/// Quadrature over the annulus {r_in <= |x| <= r_out} (a ball when
/// r_in = 0).  Radial weights absorb the r^{n-1} volume factor, so
/// integrate(f) approximates the plain volume integral of f.
class AnnulusRule {
public:
    int dim = 0;
    double r_inner = 0.0, r_outer = 0.0;
    std::vector<double> radial_nodes;
    std::vector<double> radial_weights; // include r^{n-1}
    QuadratureRule angular;

    template <class F>
    double integrate(F&& f) const {
        std::vector<double> x(static_cast<std::size_t>(dim));
        double acc = 0.0;
        for (std::size_t ir = 0; ir < radial_nodes.size(); ++ir) {
            const double r = radial_nodes[ir];
            double shell = 0.0;
            for (std::size_t ia = 0; ia < angular.size(); ++ia) {
                auto theta = angular.node(ia);
                for (int d = 0; d < dim; ++d)
                    x[static_cast<std::size_t>(d)] = r * theta[static_cast<std::size_t>(d)];
                shell += angular.weights[ia] * f(std::span<const double>(x));
            }
            acc += radial_weights[ir] * shell;
        }
        return acc;
    }
};

/// Plain tensor rule: `radial_order` Gauss nodes on [r_in, r_out] times the
/// given angular rule.  Exact (1e-10 relative) for radially-polynomial x
/// spherically-polynomial integrands within the declared orders.
AnnulusRule build_annulus_rule(int n, double r_in, double r_out, int radial_order,
                               QuadratureRule angular);

/// Same, but with the radial axis split into panels graded geometrically
/// towards `focus` (a radius where the integrand has a boundary layer of
/// width ~1/scale, e.g. r^k near r = 1 with k = scale).  `panel_order`
/// Gauss nodes per panel.
AnnulusRule build_annulus_rule_graded(int n, double r_in, double r_out, double focus,
                                      double scale, int panel_order,
                                      QuadratureRule angular);

} // namespace ballharm
