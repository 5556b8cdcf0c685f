#pragma once

#include "conic/geometry.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace conic {

enum class Verdict { DeformableNormalized, DeformableAfterRescale, Obstructed };

std::string_view to_string(Verdict verdict);

/// Outcome of the two boundary conditions for conformal deformation to constant scalar
/// curvature within conic metrics:
///   1. S(h(0)) is a positive constant c over the link;
///   2. sum h^{kl} dh_{kl}/dx vanishes at x = 0.
struct ObstructionReport {
    int m = 2;
    bool link_curvature_constant = false;
    double link_curvature_value = 0.0;  // c = S(h(0)); mean over samples when not constant
    bool trace_condition = false;
    double trace_value = 0.0;
    bool normalized = false;            // c = m(m-1)
    bool scalar_curvature_bounded = false;
    std::vector<double> admissible_alpha;
    double rescale_factor = 1.0;        // scaling of h(0) that makes c = m(m-1)
    double cone_angle = 1.0;            // sqrt(rescale_factor)
    Verdict verdict = Verdict::Obstructed;
    std::string detail;
};

ObstructionReport check_obstructions(const ConicMetric& g, double tol = 1e-8);

/// One root of (2 alpha/(m-1) + 1)^2 c = m(m-1) for the exponent of u ~ u0 x^alpha.
/// The conformal metric u^{4/(m-1)} g then carries x^{metric_exponent} with
/// metric_exponent = 4 alpha/(m-1); it stays conic only for metric_exponent > -2.
struct AlphaRoot {
    double alpha = 0.0;
    double metric_exponent = 0.0;
    bool admissible = false;
};

/// Both roots alpha = (m-1)/2 (-1 +- sqrt(m(m-1)/c)), larger root first.
std::vector<AlphaRoot> alpha_exponents(double c, int m);

struct AlphaConsistency {
    std::vector<double> exponent_roots;     // admissible roots of the curvature-matching condition
    std::vector<double> coefficient_roots;  // roots of the leading-coefficient quadratic
    std::vector<double> common_roots;       // admissible roots shared by both sets
    bool intersect = false;
    bool consistent_only_at_zero = false;   // intersect, and every common root is 0
};

/// Compares the exponent roots with the roots of
///   alpha^2 + (m-1) alpha - c (m-1)/(4m) + (m-1)^2/4 = 0,
/// i.e. -(m-1)/2 +- sqrt(c (m-1)) / (2 sqrt(m)), matching within `tol`.
AlphaConsistency alpha_consistency(double c, int m, double tol = 1e-10);

} // namespace conic
