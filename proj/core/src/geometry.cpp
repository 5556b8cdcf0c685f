#include "conic/geometry.hpp"

#include "conic/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace conic {

namespace {

double checked(double value, const char* what, double x) {
    if (!std::isfinite(value)) {
        throw EvaluationError(std::string("non-finite ") + what + " at x = " + std::to_string(x));
    }
    return value;
}

void require_positive_x(double x, const char* op) {
    if (!(x > 0.0)) {
        throw DomainError(std::string(op) + ": x must be positive, got " + std::to_string(x));
    }
}

} // namespace

double Warping::slope_deficit(double x) const {
    if (d1_minus_slope) return d1_minus_slope(x);
    return d1(x) - slope;
}

double round_sphere_volume(int m) {
    const double n = m + 1;
    return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

LinkMetric LinkMetric::constant_curvature(int m, double curvature, std::optional<double> volume) {
    if (m < 2) throw DomainError("link dimension m must be >= 2");
    if (!std::isfinite(curvature)) throw DomainError("link scalar curvature must be finite");
    LinkMetric link;
    link.m_ = m;
    link.kind_ = LinkKind::ConstantCurvature;
    link.curvature_ = {curvature};
    if (volume) {
        if (!(*volume > 0.0)) throw DomainError("link volume must be positive");
        link.volume_ = *volume;
    } else if (curvature > 0.0) {
        // h0 = r^2 * round with m(m-1)/r^2 = curvature.
        const double r2 = m * (m - 1.0) / curvature;
        link.volume_ = std::pow(r2, 0.5 * m) * round_sphere_volume(m);
    } else {
        throw DomainError("link volume must be given for non-positive link curvature");
    }
    return link;
}

LinkMetric LinkMetric::round_sphere(int m) {
    return constant_curvature(m, m * (m - 1.0));
}

LinkMetric LinkMetric::axisymmetric_sphere(double amplitude, std::size_t theta_n) {
    if (!(amplitude > -1.0 && amplitude < 1.0)) {
        throw DomainError("axisymmetric link amplitude must lie in (-1, 1)");
    }
    if (theta_n < 3) throw DomainError("axisymmetric link needs at least 3 polar samples");
    LinkMetric link;
    link.m_ = 2;
    link.kind_ = LinkKind::AxisymmetricSphereGrid;
    link.amplitude_ = amplitude;
    link.volume_ = 2.0 * std::numbers::pi * (2.0 + 4.0 * amplitude / 3.0);
    link.theta_.resize(theta_n);
    link.curvature_.resize(theta_n);
    for (std::size_t j = 0; j < theta_n; ++j) {
        const double theta = std::numbers::pi * static_cast<double>(j) / static_cast<double>(theta_n - 1);
        const double s2 = std::sin(theta) * std::sin(theta);
        // Gaussian curvature -rho''/rho, doubled.
        link.theta_[j] = theta;
        link.curvature_[j] = 2.0 * (1.0 - amplitude * (6.0 - 9.0 * s2)) / (1.0 + amplitude * s2);
    }
    return link;
}

bool LinkMetric::curvature_is_constant(double tol) const {
    const auto [lo, hi] = std::minmax_element(curvature_.begin(), curvature_.end());
    const double scale = std::max(1.0, std::max(std::abs(*lo), std::abs(*hi)));
    return (*hi - *lo) <= tol * scale;
}

ConicMetric::ConicMetric(LinkMetric link, Warping warping, double x_max)
    : link_(std::move(link)), warping_(std::move(warping)), x_max_(x_max) {
    if (!(x_max_ > 0.0) || !std::isfinite(x_max_)) throw DomainError("x_max must be positive");
    if (!warping_.value || !warping_.d1 || !warping_.d2) {
        throw DomainError("warping '" + warping_.name + "' needs value, d1 and d2");
    }
    if (!(warping_.slope > 0.0)) {
        throw DomainError("warping '" + warping_.name + "': psi(x)/x must tend to k > 0");
    }
    constexpr int probes = 257;
    for (int j = 1; j <= probes; ++j) {
        const double t = static_cast<double>(j) / probes;
        const double x = x_max_ * t * t;
        const double psi = checked(warping_.value(x), "psi", x);
        checked(warping_.d1(x), "psi'", x);
        checked(warping_.d2(x), "psi''", x);
        if (!(psi > 0.0)) {
            throw DomainError("warping '" + warping_.name + "' is not positive at x = " + std::to_string(x));
        }
        if (warping_.rigid_radius && x <= *warping_.rigid_radius) {
            const double expected = warping_.slope * x;
            if (std::abs(psi - expected) > 1e-12 * expected) {
                throw DomainError("warping '" + warping_.name + "' flagged rigid but psi != k x");
            }
        }
    }
}

double ConicMetric::boundary_link_curvature(std::size_t sample) const {
    const double k = warping_.slope;
    return link_.scalar_curvature(sample) / (k * k);
}

double ConicMetric::trace_x_derivative(double x) const {
    require_positive_x(x, "trace_x_derivative");
    const double psi = warping_.value(x);
    // psi'/psi - 1/x = (x psi' - psi) / (x psi); x psi' - psi = x (psi' - k) - (psi - k x).
    const double numer = x * warping_.slope_deficit(x) - (psi - warping_.slope * x);
    return 2.0 * dim() * numer / (x * psi);
}

double ConicMetric::trace_x_derivative_at_boundary() const {
    return dim() * warping_.second_at_tip / warping_.slope;
}

bool SingularPart::vanishes(double tol) const {
    const auto small = [tol](double v) { return std::abs(v) <= tol; };
    return std::all_of(inverse_square.begin(), inverse_square.end(), small) &&
           std::all_of(inverse_linear.begin(), inverse_linear.end(), small);
}

double scalar_curvature_warped(const ConicMetric& g, double x, std::size_t link_sample) {
    require_positive_x(x, "scalar_curvature_warped");
    const Warping& w = g.warping();
    const int m = g.dim();
    const double mm1 = m * (m - 1.0);
    const double k = w.slope;
    const double psi = checked(w.value(x), "psi", x);
    const double dpsi_minus_k = checked(w.slope_deficit(x), "psi' - k", x);
    const double d2psi = checked(w.d2(x), "psi''", x);
    // S(h0) - m(m-1) psi'^2 split as [S(h0) - m(m-1) k^2] - m(m-1)(psi' - k)(psi' + k).
    const double link_defect = g.link().scalar_curvature(link_sample) - mm1 * k * k;
    const double radial = link_defect - mm1 * dpsi_minus_k * (dpsi_minus_k + 2.0 * k);
    return radial / (psi * psi) - 2.0 * m * d2psi / psi;
}

CurvatureProfile curvature_profile(const ConicMetric& g, const RadialGrid& grid) {
    CurvatureProfile profile;
    const std::size_t samples = g.link().samples();
    const bool axisymmetric = g.link().kind() == LinkKind::AxisymmetricSphereGrid;
    profile.nodes = grid.size();
    profile.link_samples = samples;
    profile.x.reserve(grid.size() * samples);
    profile.scalar_curvature.reserve(grid.size() * samples);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t s = 0; s < samples; ++s) {
            profile.x.push_back(grid[i]);
            if (axisymmetric) profile.theta.push_back(g.link().theta()[s]);
            profile.scalar_curvature.push_back(scalar_curvature_warped(g, grid[i], s));
        }
    }
    profile.singular = singular_part(g);
    profile.bounded_at_boundary = curvature_bounded_at_boundary(g);
    return profile;
}

SingularPart singular_part(const ConicMetric& g) {
    const int m = g.dim();
    const double mm1 = m * (m - 1.0);
    const double tau = g.trace_x_derivative_at_boundary();
    SingularPart part;
    for (std::size_t s = 0; s < g.link().samples(); ++s) {
        const double sigma = g.boundary_link_curvature(s) - mm1;
        part.inverse_square.push_back(sigma);
        part.inverse_linear.push_back(-2.0 * m * tau - sigma * tau / m);
    }
    return part;
}

double mean_curvature_trace(const ConicMetric& g, double x) {
    require_positive_x(x, "mean_curvature_trace");
    const int m = g.dim();
    if (g.warping().rigid_radius && x <= *g.warping().rigid_radius) return -m / x;
    return -m / x - 0.5 * g.trace_x_derivative(x);
}

double volume_element(const ConicMetric& g, double x) {
    require_positive_x(x, "volume_element");
    return std::pow(g.warping().value(x), g.dim()) * g.link().volume();
}

bool curvature_bounded_at_boundary(const ConicMetric& g, double tol) {
    return singular_part(g).vanishes(tol);
}

} // namespace conic
