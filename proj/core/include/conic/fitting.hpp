#pragma once

#include <cstddef>
#include <span>

namespace conic {

/// Least-squares line through (log x, log y): y ~ prefactor * x^exponent.
struct PowerLawFit {
    double exponent = 0.0;
    double log_prefactor = 0.0;
    double rms_log_residual = 0.0;
    std::size_t points = 0;
};

/// Requires at least two points with x > 0 and y > 0; throws DomainError otherwise.
PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y);

/// Observed convergence order from errors on successively halved grids:
/// the least-squares slope of log2(error) against refinement level, negated.
double observed_order(std::span<const double> errors);

} // namespace conic
