#pragma once

#include "conic/geometry.hpp"
#include "conic/grid.hpp"

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace conic {

/// Positive conformal factor sampled on a radial grid.
///
/// Values are held as base + offset[i]; differences between nodes use the offsets alone.
struct ConformalFactor {
    double base = 0.0;
    std::vector<double> offset;
    double boundary_constant = std::numeric_limits<double>::quiet_NaN();  // u0
    double fitted_exponent = std::numeric_limits<double>::quiet_NaN();    // p in u - u0 ~ x^p

    static ConformalFactor constant(std::size_t n, double value);
    static ConformalFactor from_values(std::span<const double> values);

    std::size_t size() const noexcept { return offset.size(); }
    double operator[](std::size_t i) const { return base + offset[i]; }
    std::vector<double> values() const;
    double min() const;
    double max() const;
    ConformalFactor scaled(double k) const;
};

/// Conservative discretisation of the radial Laplacian
///   Delta v = psi^-m (psi^m v')' = v'' + m (psi'/psi) v'
/// on the graded grid. Cell i spans the midpoints around node i (the first cell starts at
/// the tip, the last is a half cell closed by a zero-flux wall at x_max):
///   (Delta v)_i = lower[i] (v[i-1] - v[i]) + upper[i] (v[i+1] - v[i]).
/// Cell volumes integrate psi^m exactly up to quadrature error; face areas are psi^m at
/// the midpoints. Exact for quadratics on the flat cone.
struct Stencil {
    std::vector<double> lower;  // lower[0] = 0
    std::vector<double> upper;  // upper[N-1] = 0
    std::vector<double> cell_volume;  // integral of psi^m over cell i

    std::size_t size() const noexcept { return lower.size(); }
};

Stencil laplacian_coefficients(const ConicMetric& g, const RadialGrid& grid);

std::vector<double> apply_laplacian(const Stencil& stencil, const ConformalFactor& u);
std::vector<double> apply_laplacian(const Stencil& stencil, std::span<const double> v);

/// Yamabe operator data: P u = Delta u - a S u - a u^p with a = (m-1)/(4m), p = (m+3)/(m-1).
/// Construction requires bounded curvature at the tip and a constant link curvature (the
/// radial reduction); otherwise HypothesisError.
class YamabeContext {
public:
    YamabeContext(const ConicMetric& g, const RadialGrid& grid);

    int m() const noexcept { return m_; }
    double a() const noexcept { return a_; }
    double power() const noexcept { return power_; }
    const ConicMetric& metric() const noexcept { return metric_; }
    const RadialGrid& grid() const noexcept { return grid_; }
    const Stencil& stencil() const noexcept { return stencil_; }
    std::span<const double> scalar_curvature() const noexcept { return curvature_; }
    std::size_t size() const noexcept { return curvature_.size(); }

private:
    ConicMetric metric_;
    RadialGrid grid_;
    int m_;
    double a_;
    double power_;
    Stencil stencil_;
    std::vector<double> curvature_;
};

/// Node-wise P u. Throws DomainError for non-positive u.
std::vector<double> yamabe_residual(const YamabeContext& ctx, const ConformalFactor& u);

/// Scalar curvature of u^{4/(m-1)} g: (-(1/a) Delta u + S u) / u^p.
std::vector<double> conformal_scalar_curvature(const YamabeContext& ctx, const ConformalFactor& u);

struct FitWindow {
    double lo = 0.0;
    double hi = 0.0;
};

/// Default window [x_max/100, x_max/10].
FitWindow tip_window(const RadialGrid& grid);

struct PreservationReport {
    bool preserves = false;
    bool constant_like = false;  // u - u0 below the noise floor on the window
    bool diverges = false;       // u grows like a negative power of x: no u0 exists
    double u0 = 0.0;
    double exponent = 0.0;       // +inf when constant_like
    double rms_log_residual = 0.0;
    std::size_t points = 0;
    std::string detail;
};

/// Least-squares fit of log|u - u0| against log x on the window, u0 = u(nodes[0]).
/// Preserves the conic class when the exponent is at least 2 - 0.1 and u0 > 0.
/// Throws GridError when the window holds fewer than 8 nodes or reaches past x_max/2.
PreservationReport conic_preservation(const ConformalFactor& u, const RadialGrid& grid, FitWindow window);
PreservationReport conic_preservation(const ConformalFactor& u, const RadialGrid& grid);

/// Boundary data after the change of variable t ~ x^{(alpha+2)/2} for u ~ u0 x^alpha:
/// curvature = S(h0)(alpha+2)^2/4, t_coefficient = 2 sqrt(u0)/(alpha+2).
struct RescaledBoundary {
    double curvature = 0.0;
    double t_coefficient = 0.0;
};

RescaledBoundary rescaled_boundary_metric(double u0, double alpha, double h0_curvature);

} // namespace conic
