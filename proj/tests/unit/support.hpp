#pragma once

#include "conic/cli/catalog.hpp"
#include "conic/geometry.hpp"

#include <cmath>
#include <string>

namespace testing {

inline conic::ConicMetric metric(const std::string& name, int m = 2) { return conic::cli::catalog_metric(name, m); }

/// psi = x + 0.1 x^3 on the unit round link: smooth, bounded curvature, not in the catalog.
inline conic::ConicMetric cubic_metric(int m = 2) {
    conic::Warping w;
    w.name = "cubic";
    w.value = [](double x) { return x + 0.1 * x * x * x; };
    w.d1 = [](double x) { return 1.0 + 0.3 * x * x; };
    w.d2 = [](double x) { return 0.6 * x; };
    w.d1_minus_slope = [](double x) { return 0.3 * x * x; };
    return conic::ConicMetric(conic::LinkMetric::round_sphere(m), w, 1.0);
}

/// negcurv scaled by 1/4 (psi_s(x) = psi(2x)/2 on (0, 1/2]), so S_s(x) = 4 S(2x).
inline conic::ConicMetric scaled_negcurv() {
    conic::Warping w;
    w.name = "negcurv/4";
    w.value = [](double x) { return x * std::exp(2.0 * x * x); };
    w.d1 = [](double x) { return std::exp(2.0 * x * x) * (1.0 + 4.0 * x * x); };
    w.d2 = [](double x) { return std::exp(2.0 * x * x) * (16.0 * x * x * x + 12.0 * x); };
    w.d1_minus_slope = [](double x) { return std::expm1(2.0 * x * x) * (1.0 + 4.0 * x * x) + 4.0 * x * x; };
    return conic::ConicMetric(conic::LinkMetric::round_sphere(2), w, 0.5);
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

} // namespace testing
