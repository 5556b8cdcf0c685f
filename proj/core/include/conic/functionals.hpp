#pragma once

#include "conic/conformal.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace conic {

/// Integral of f over (0, x_max] by the composite trapezoid rule on the grid nodes, with
/// the first segment [0, nodes[0]] closed by f(0) = 0.
double trapezoid_from_tip(const RadialGrid& grid, std::span<const double> f);

struct EinsteinHilbert {
    double total_curvature = 0.0;  // integral of S dVol
    double volume = 0.0;
    double value = 0.0;            // total_curvature / volume^{(m-1)/(m+1)}
};

/// EH of g itself. Throws HypothesisError when S is unbounded at the tip (the integrand
/// S psi^m is then not integrable uniformly in the grid) and DomainError for non-constant links.
EinsteinHilbert einstein_hilbert(const ConicMetric& g, const RadialGrid& grid);

/// EH of u^{4/(m-1)} g, with S from conformal_scalar_curvature and
/// dVol = u^{2(m+1)/(m-1)} psi^m vol(Y) dx.
EinsteinHilbert einstein_hilbert(const YamabeContext& ctx, const ConformalFactor& u);

/// One-parameter family of conformal factors on a fixed grid.
struct ConformalFamily {
    std::string name;
    std::vector<double> parameters;
    std::function<ConformalFactor(double parameter, const RadialGrid& grid)> factor;
};

/// u = k (constants).
ConformalFamily constant_family(std::vector<double> scales);
/// u_t = 1 + t xi^2 (2 - xi^2) with xi = x/x_max: equal to 1 + O(x^2) at the tip and flat at x_max.
ConformalFamily bump_family(std::vector<double> amplitudes);

struct SkippedParameter {
    double parameter = 0.0;
    std::string reason;
};

struct YamabeEstimate {
    double inf_value = 0.0;  // upper bound on the conic Yamabe constant of [g]
    double argmin = 0.0;
    std::size_t family_size = 0;
    std::vector<double> parameters;  // evaluated parameters
    std::vector<double> values;      // EH at each evaluated parameter
    std::vector<SkippedParameter> skipped;
    double base_value = 0.0;         // EH(g)
    bool below_base = false;         // inf_value < base_value
    bool finite = false;
};

/// Minimum of EH over the family. Factors failing conic_preservation are skipped.
/// Throws DomainError when every parameter is skipped.
YamabeEstimate conic_yamabe_estimate(const YamabeContext& ctx, const ConformalFamily& family);

} // namespace conic
