#include "conic/conformal.hpp"

#include "conic/errors.hpp"
#include "conic/fitting.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace conic {

ConformalFactor ConformalFactor::constant(std::size_t n, double value) {
    ConformalFactor u;
    u.base = value;
    u.offset.assign(n, 0.0);
    return u;
}

ConformalFactor ConformalFactor::from_values(std::span<const double> values) {
    ConformalFactor u;
    u.offset.assign(values.begin(), values.end());
    return u;
}

std::vector<double> ConformalFactor::values() const {
    std::vector<double> out(offset.size());
    for (std::size_t i = 0; i < offset.size(); ++i) out[i] = base + offset[i];
    return out;
}

double ConformalFactor::min() const {
    return base + *std::min_element(offset.begin(), offset.end());
}

double ConformalFactor::max() const {
    return base + *std::max_element(offset.begin(), offset.end());
}

ConformalFactor ConformalFactor::scaled(double k) const {
    ConformalFactor u = *this;
    u.base *= k;
    for (double& o : u.offset) o *= k;
    u.boundary_constant *= k;
    return u;
}

namespace {

// Five-point Gauss-Legendre rule on [-1, 1].
constexpr std::array<double, 5> kGaussNodes = {0.0, -0.5384693101056831, 0.5384693101056831,
                                               -0.9061798459386640, 0.9061798459386640};
constexpr std::array<double, 5> kGaussWeights = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                                                 0.2369268850561891, 0.2369268850561891};

double integrate(const RadialFunction& f, double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double sum = 0.0;
    for (std::size_t q = 0; q < kGaussNodes.size(); ++q) sum += kGaussWeights[q] * f(mid + half * kGaussNodes[q]);
    return half * sum;
}

void require_positive(const ConformalFactor& u, const char* op) {
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (!(u[i] > 0.0)) {
            std::ostringstream msg;
            msg << op << ": conformal factor must be positive, got " << u[i] << " at node " << i;
            throw DomainError(msg.str());
        }
    }
}

} // namespace

Stencil laplacian_coefficients(const ConicMetric& g, const RadialGrid& grid) {
    const std::size_t n = grid.size();
    const int m = g.dim();
    const auto& psi = g.warping().value;
    const RadialFunction weight = [&](double x) { return std::pow(psi(x), m); };

    std::vector<double> face(n + 1);
    face[0] = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) face[i + 1] = 0.5 * (grid[i] + grid[i + 1]);
    face[n] = grid[n - 1];

    Stencil s;
    s.lower.assign(n, 0.0);
    s.upper.assign(n, 0.0);
    s.cell_volume.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        s.cell_volume[i] = integrate(weight, face[i], face[i + 1]);
        if (!(s.cell_volume[i] > 0.0) || !std::isfinite(s.cell_volume[i])) {
            throw AssemblyError("degenerate cell volume at node " + std::to_string(i));
        }
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double area = weight(face[i + 1]);
        const double flux = area / (grid[i + 1] - grid[i]);
        s.upper[i] = flux / s.cell_volume[i];
        s.lower[i + 1] = flux / s.cell_volume[i + 1];
    }
    return s;
}

std::vector<double> apply_laplacian(const Stencil& stencil, const ConformalFactor& u) {
    return apply_laplacian(stencil, u.offset);
}

std::vector<double> apply_laplacian(const Stencil& stencil, std::span<const double> v) {
    const std::size_t n = stencil.size();
    if (v.size() != n) throw DomainError("apply_laplacian: size mismatch");
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        if (i > 0) sum += stencil.lower[i] * (v[i - 1] - v[i]);
        if (i + 1 < n) sum += stencil.upper[i] * (v[i + 1] - v[i]);
        out[i] = sum;
    }
    return out;
}

YamabeContext::YamabeContext(const ConicMetric& g, const RadialGrid& grid)
    : metric_(g), grid_(grid), m_(g.dim()) {
    if (std::abs(grid.x_max() - g.x_max()) > 1e-12 * g.x_max()) {
        throw DomainError("grid x_max does not match the metric");
    }
    if (!g.link().curvature_is_constant(1e-12)) {
        throw HypothesisError("radial Yamabe reduction needs a link of constant scalar curvature");
    }
    const SingularPart singular = singular_part(g);
    if (!singular.vanishes(1e-8)) {
        std::ostringstream msg;
        msg << "scalar curvature is unbounded at the tip (x^-2 coefficient " << singular.inverse_square[0]
            << ", x^-1 coefficient " << singular.inverse_linear[0]
            << "); bounded curvature needs S(h(0)) = m(m-1) and a vanishing boundary trace";
        throw HypothesisError(msg.str());
    }
    a_ = (m_ - 1.0) / (4.0 * m_);
    power_ = (m_ + 3.0) / (m_ - 1.0);
    stencil_ = laplacian_coefficients(g, grid);
    curvature_.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        curvature_[i] = scalar_curvature_warped(g, grid[i]);
        if (!std::isfinite(curvature_[i])) {
            throw EvaluationError("non-finite scalar curvature at node " + std::to_string(i));
        }
    }
}

std::vector<double> yamabe_residual(const YamabeContext& ctx, const ConformalFactor& u) {
    if (u.size() != ctx.size()) throw DomainError("yamabe_residual: size mismatch");
    require_positive(u, "yamabe_residual");
    std::vector<double> out = apply_laplacian(ctx.stencil(), u);
    const auto S = ctx.scalar_curvature();
    const double a = ctx.a();
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double ui = u[i];
        out[i] -= a * S[i] * ui + a * std::pow(ui, ctx.power());
    }
    return out;
}

std::vector<double> conformal_scalar_curvature(const YamabeContext& ctx, const ConformalFactor& u) {
    if (u.size() != ctx.size()) throw DomainError("conformal_scalar_curvature: size mismatch");
    require_positive(u, "conformal_scalar_curvature");
    std::vector<double> out = apply_laplacian(ctx.stencil(), u);
    const auto S = ctx.scalar_curvature();
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double ui = u[i];
        out[i] = (-out[i] / ctx.a() + S[i] * ui) / std::pow(ui, ctx.power());
    }
    return out;
}

FitWindow tip_window(const RadialGrid& grid) {
    return {grid.x_max() / 100.0, grid.x_max() / 10.0};
}

PreservationReport conic_preservation(const ConformalFactor& u, const RadialGrid& grid) {
    return conic_preservation(u, grid, tip_window(grid));
}

PreservationReport conic_preservation(const ConformalFactor& u, const RadialGrid& grid, FitWindow window) {
    if (u.size() != grid.size()) throw DomainError("conic_preservation: size mismatch");
    if (!(window.lo > 0.0) || !(window.hi > window.lo) || window.hi > 0.5 * grid.x_max()) {
        throw GridError("fit window must lie inside (0, x_max/2)");
    }
    const std::vector<std::size_t> idx = grid.indices_in(window.lo, window.hi);
    if (idx.size() < 8) {
        throw GridError("fit window holds " + std::to_string(idx.size()) + " nodes, need at least 8");
    }
    require_positive(u, "conic_preservation");

    PreservationReport report;
    report.u0 = u[0];
    report.points = idx.size();

    std::vector<double> xs, us;
    for (std::size_t i : idx) {
        xs.push_back(grid[i]);
        us.push_back(u[i]);
    }
    const PowerLawFit growth = fit_power_law(xs, us);
    if (growth.exponent < -0.1) {
        report.diverges = true;
        report.exponent = growth.exponent;
        report.rms_log_residual = growth.rms_log_residual;
        std::ostringstream msg;
        msg << "u ~ x^" << growth.exponent << " near the tip: no positive boundary constant exists";
        report.detail = msg.str();
        return report;
    }

    const double floor = 1e-11 * std::max(1.0, std::abs(report.u0));
    std::vector<double> fx, fy;
    for (std::size_t i : idx) {
        // Offsets carry the differences without the rounding of the base value.
        const double d = std::abs(u.offset[i] - u.offset[0]);
        if (d > floor) {
            fx.push_back(grid[i]);
            fy.push_back(d);
        }
    }
    if (fx.size() < 8) {
        report.constant_like = true;
        report.exponent = std::numeric_limits<double>::infinity();
        report.preserves = report.u0 > 0.0;
        report.detail = "u - u0 is indistinguishable from constant on the fit window";
        return report;
    }
    const PowerLawFit fit = fit_power_law(fx, fy);
    report.exponent = fit.exponent;
    report.rms_log_residual = fit.rms_log_residual;
    report.points = fit.points;
    report.preserves = fit.exponent >= 2.0 - 0.1 && report.u0 > 0.0;
    std::ostringstream msg;
    msg << "u - u0 ~ x^" << fit.exponent << " with u0 = " << report.u0;
    report.detail = msg.str();
    return report;
}

RescaledBoundary rescaled_boundary_metric(double u0, double alpha, double h0_curvature) {
    if (!(alpha > -2.0)) throw DomainError("rescaled_boundary_metric: alpha must exceed -2");
    if (!(u0 > 0.0)) throw DomainError("rescaled_boundary_metric: u0 must be positive");
    RescaledBoundary out;
    out.curvature = 0.25 * (alpha + 2.0) * (alpha + 2.0) * h0_curvature;
    out.t_coefficient = 2.0 * std::sqrt(u0) / (alpha + 2.0);
    return out;
}

} // namespace conic
