#pragma once

#include "conic/geometry.hpp"
#include "conic/grid.hpp"

#include <functional>
#include <span>
#include <vector>

namespace conic {

/// Dense symmetric metric components g_ij(p) in some chart of dimension n, written
/// row-major into `out` (n*n entries).
using MetricField = std::function<void(std::span<const double> point, std::span<double> out)>;

/// Scalar curvature at `point` assembled from a metric field by central differences:
/// Christoffel symbols from first differences of g_ij (step `step`), the Riemann
/// contraction R^k_{ikj} from first differences of the Christoffel symbols, then
/// S = g^{ij} R^k_{ikj}. Second-order accurate in `step`.
/// Throws AssemblyError when the metric matrix is singular at any stencil point.
double scalar_curvature_from_metric(const MetricField& metric, std::span<const double> point, double step);

/// The warped conic metric written in Cartesian coordinates z of R^{m+1}, r = |z|:
///   g = W(r) [ dr^2 + (r_link psi(r)/r)^2 (|dz|^2 - dr^2) ],
/// where the link is the round sphere of curvature S(h0) = m(m-1)/r_link^2 and W is an
/// optional radial metric multiplier (W = u^{4/(m-1)} for a conformal factor u).
/// Requires a constant, positive link curvature.
MetricField cartesian_metric(const ConicMetric& g, RadialFunction metric_multiplier = {});

/// Scalar curvature of g on the grid by finite differences of the Cartesian metric along a
/// fixed generic ray. The difference step at node x is min(grid.spacing(x), x/4).
/// Throws DomainError for links without constant positive curvature.
CurvatureProfile scalar_curvature_fd(const ConicMetric& g, const RadialGrid& grid);

/// Same oracle for the conformal metric W(x) g.
std::vector<double> scalar_curvature_fd(const ConicMetric& g, const RadialGrid& grid,
                                        const RadialFunction& metric_multiplier);

} // namespace conic
