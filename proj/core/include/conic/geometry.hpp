#pragma once

#include "conic/grid.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace conic {

using RadialFunction = std::function<double(double)>;

/// Warping function psi of g = dx^2 + psi(x)^2 h0 with analytic derivatives.
///
/// `d1_minus_slope` returns psi'(x) - psi'(0) without cancellation; when empty,
/// d1(x) - slope is used.
struct Warping {
    std::string name;
    RadialFunction value;
    RadialFunction d1;
    RadialFunction d2;
    RadialFunction d1_minus_slope;
    double slope = 1.0;          // psi'(0) = k
    double second_at_tip = 0.0;  // psi''(0)
    std::optional<double> rigid_radius;  // psi = k x exactly on (0, rigid_radius]

    double slope_deficit(double x) const;
};

enum class LinkKind { ConstantCurvature, AxisymmetricSphereGrid };

/// Closed link (Y^m, h0). Only scalar-curvature data and total volume are needed by the
/// radial computations; the axisymmetric model carries S(h0) sampled over polar angle.
class LinkMetric {
public:
    /// Abstract link with S(h0) = curvature. Volume defaults to the round sphere of the
    /// matching radius and must be supplied when curvature <= 0.
    static LinkMetric constant_curvature(int m, double curvature,
                                         std::optional<double> volume = std::nullopt);
    /// Unit round S^m: S = m(m-1), volume 2 pi^{(m+1)/2} / Gamma((m+1)/2).
    static LinkMetric round_sphere(int m);
    /// S^2 with metric dtheta^2 + rho(theta)^2 dphi^2, rho = sin(theta)(1 + amplitude sin^2(theta)),
    /// sampled at theta_n equispaced polar angles in [0, pi].
    static LinkMetric axisymmetric_sphere(double amplitude, std::size_t theta_n);

    int dim() const noexcept { return m_; }
    LinkKind kind() const noexcept { return kind_; }
    double volume() const noexcept { return volume_; }
    double amplitude() const noexcept { return amplitude_; }

    /// Number of link sample points (1 for a constant-curvature link).
    std::size_t samples() const noexcept { return curvature_.size(); }
    std::span<const double> theta() const noexcept { return theta_; }
    std::span<const double> scalar_curvature() const noexcept { return curvature_; }
    double scalar_curvature(std::size_t sample) const { return curvature_.at(sample); }

    /// True when the sampled S(h0) varies by at most tol relative to its magnitude.
    bool curvature_is_constant(double tol) const;

private:
    LinkMetric() = default;

    int m_ = 2;
    LinkKind kind_ = LinkKind::ConstantCurvature;
    double volume_ = 0.0;
    double amplitude_ = 0.0;
    std::vector<double> theta_;
    std::vector<double> curvature_;
};

double round_sphere_volume(int m);

/// Warped-product conic metric g = dx^2 + psi(x)^2 h0 on (0, x_max] x Y, i.e.
/// h(x) = (psi(x)/x)^2 h0 and h(0) = k^2 h0. The outer end x = x_max is reflecting.
class ConicMetric {
public:
    ConicMetric(LinkMetric link, Warping warping, double x_max);

    const LinkMetric& link() const noexcept { return link_; }
    const Warping& warping() const noexcept { return warping_; }
    double x_max() const noexcept { return x_max_; }
    int dim() const noexcept { return link_.dim(); }
    bool rigid() const noexcept { return warping_.rigid_radius.has_value(); }

    /// S(h(0)) at a link sample: the link curvature seen at the tip, S(h0) / k^2.
    double boundary_link_curvature(std::size_t sample = 0) const;

    /// sum h^{kl} dh_{kl}/dx at x (= 2m (psi'/psi - 1/x)).
    double trace_x_derivative(double x) const;
    /// Limit of trace_x_derivative at x = 0 (= m psi''(0) / psi'(0)).
    double trace_x_derivative_at_boundary() const;

    /// h~ = d log sqrt(det h) / dx, the first-order term of the Laplacian.
    double log_volume_derivative(double x) const { return 0.5 * trace_x_derivative(x); }

private:
    LinkMetric link_;
    Warping warping_;
    double x_max_;
};

/// Coefficients of the singular terms of S(g) near x = 0, per link sample:
/// S(g) = x^-2 * inverse_square + x^-1 * inverse_linear + O(1).
struct SingularPart {
    std::vector<double> inverse_square;
    std::vector<double> inverse_linear;

    bool vanishes(double tol) const;
};

struct CurvatureProfile {
    std::size_t nodes = 0;
    std::size_t link_samples = 1;
    std::vector<double> x;      // one entry per row (node-major, link sample minor)
    std::vector<double> theta;  // empty for constant-curvature links
    std::vector<double> scalar_curvature;
    SingularPart singular;
    bool bounded_at_boundary = false;

    double at(std::size_t node, std::size_t sample = 0) const {
        return scalar_curvature[node * link_samples + sample];
    }
};

/// Closed-form warped-product curvature
///   S(g) = psi^-2 [ S(h0)(y) - 2 m psi psi'' - m(m-1) psi'^2 ].
double scalar_curvature_warped(const ConicMetric& g, double x, std::size_t link_sample = 0);

/// Node-wise profile from the closed form, all link samples.
CurvatureProfile curvature_profile(const ConicMetric& g, const RadialGrid& grid);

/// Second-order Laurent coefficients of S(g) at the tip from the warped expansion
/// psi = k x + (psi''(0)/2) x^2 + O(x^3).
SingularPart singular_part(const ConicMetric& g);

/// Trace of the shape operator of the level set {x = const}: -m/x - (1/2) sum h^{kl} dh_{kl}/dx.
double mean_curvature_trace(const ConicMetric& g, double x);

/// psi(x)^m times the total link volume.
double volume_element(const ConicMetric& g, double x);

/// True when S(h(0)) = m(m-1) and the boundary trace vanishes.
bool curvature_bounded_at_boundary(const ConicMetric& g, double tol = 1e-8);

} // namespace conic
