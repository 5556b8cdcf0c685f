#include "conic/functionals.hpp"

#include "conic/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace conic {

double trapezoid_from_tip(const RadialGrid& grid, std::span<const double> f) {
    if (f.size() != grid.size()) throw DomainError("trapezoid_from_tip: size mismatch");
    double sum = 0.5 * grid[0] * f[0];
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) sum += 0.5 * (grid[i + 1] - grid[i]) * (f[i] + f[i + 1]);
    return sum;
}

namespace {

EinsteinHilbert finish(double total, double volume, int m) {
    if (!std::isfinite(total) || !(volume > 0.0)) throw EvaluationError("Einstein-Hilbert integrals are not finite");
    EinsteinHilbert eh;
    eh.total_curvature = total;
    eh.volume = volume;
    eh.value = total / std::pow(volume, (m - 1.0) / (m + 1.0));
    return eh;
}

} // namespace

EinsteinHilbert einstein_hilbert(const ConicMetric& g, const RadialGrid& grid) {
    if (g.link().samples() != 1) throw DomainError("Einstein-Hilbert functional needs a constant-curvature link");
    const SingularPart singular = singular_part(g);
    if (!singular.vanishes(1e-8)) {
        std::ostringstream msg;
        msg << "S x^2 does not vanish at the tip (coefficient " << singular.inverse_square[0]
            << "): the curvature is unbounded, which needs S(h(0)) = m(m-1) and a vanishing boundary trace";
        throw HypothesisError(msg.str());
    }
    std::vector<double> curvature(grid.size()), volume(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        volume[i] = volume_element(g, grid[i]);
        curvature[i] = scalar_curvature_warped(g, grid[i]) * volume[i];
    }
    return finish(trapezoid_from_tip(grid, curvature), trapezoid_from_tip(grid, volume), g.dim());
}

EinsteinHilbert einstein_hilbert(const YamabeContext& ctx, const ConformalFactor& u) {
    const std::vector<double> S = conformal_scalar_curvature(ctx, u);
    const RadialGrid& grid = ctx.grid();
    const int m = ctx.m();
    const double q = 2.0 * (m + 1.0) / (m - 1.0);
    std::vector<double> curvature(grid.size()), volume(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        volume[i] = std::pow(u[i], q) * volume_element(ctx.metric(), grid[i]);
        curvature[i] = S[i] * volume[i];
    }
    return finish(trapezoid_from_tip(grid, curvature), trapezoid_from_tip(grid, volume), m);
}

ConformalFamily constant_family(std::vector<double> scales) {
    ConformalFamily family;
    family.name = "constant";
    family.parameters = std::move(scales);
    family.factor = [](double k, const RadialGrid& grid) { return ConformalFactor::constant(grid.size(), k); };
    return family;
}

ConformalFamily bump_family(std::vector<double> amplitudes) {
    ConformalFamily family;
    family.name = "bump";
    family.parameters = std::move(amplitudes);
    family.factor = [](double t, const RadialGrid& grid) {
        ConformalFactor u = ConformalFactor::constant(grid.size(), 1.0);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double xi2 = (grid[i] / grid.x_max()) * (grid[i] / grid.x_max());
            u.offset[i] = t * xi2 * (2.0 - xi2);
        }
        return u;
    };
    return family;
}

YamabeEstimate conic_yamabe_estimate(const YamabeContext& ctx, const ConformalFamily& family) {
    YamabeEstimate est;
    est.family_size = family.parameters.size();
    est.base_value = einstein_hilbert(ctx, ConformalFactor::constant(ctx.size(), 1.0)).value;
    est.inf_value = std::numeric_limits<double>::infinity();
    for (double t : family.parameters) {
        ConformalFactor u;
        try {
            u = family.factor(t, ctx.grid());
            if (u.size() != ctx.size()) throw DomainError("factor size does not match the grid");
            const PreservationReport conic = conic_preservation(u, ctx.grid());
            if (!conic.preserves) {
                est.skipped.push_back({t, "not conic-preserving: " + conic.detail});
                continue;
            }
        } catch (const std::exception& e) {
            est.skipped.push_back({t, e.what()});
            continue;
        }
        const double value = einstein_hilbert(ctx, u).value;
        est.parameters.push_back(t);
        est.values.push_back(value);
        if (value < est.inf_value) {
            est.inf_value = value;
            est.argmin = t;
        }
    }
    if (est.values.empty()) throw DomainError("every member of family '" + family.name + "' was skipped");
    est.finite = std::isfinite(est.inf_value);
    est.below_base = est.inf_value < est.base_value;
    return est;
}

} // namespace conic
