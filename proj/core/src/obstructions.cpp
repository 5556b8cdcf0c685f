#include "conic/obstructions.hpp"

#include "conic/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace conic {

std::string_view to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::DeformableNormalized: return "DeformableNormalized";
        case Verdict::DeformableAfterRescale: return "DeformableAfterRescale";
        case Verdict::Obstructed: return "Obstructed";
    }
    return "Obstructed";
}

ObstructionReport check_obstructions(const ConicMetric& g, double tol) {
    ObstructionReport report;
    const int m = g.dim();
    const double mm1 = m * (m - 1.0);
    report.m = m;

    const std::size_t samples = g.link().samples();
    std::vector<double> tip(samples);
    for (std::size_t s = 0; s < samples; ++s) tip[s] = g.boundary_link_curvature(s);
    const auto [lo, hi] = std::minmax_element(tip.begin(), tip.end());
    const double scale = std::max(1.0, std::max(std::abs(*lo), std::abs(*hi)));
    report.link_curvature_constant = std::isfinite(*lo) && std::isfinite(*hi) && (*hi - *lo) <= tol * scale;
    report.link_curvature_value = std::accumulate(tip.begin(), tip.end(), 0.0) / static_cast<double>(samples);

    report.trace_value = g.trace_x_derivative_at_boundary();
    report.trace_condition = std::abs(report.trace_value) <= tol;
    report.scalar_curvature_bounded = curvature_bounded_at_boundary(g, tol);

    const double c = report.link_curvature_value;
    report.normalized = report.link_curvature_constant && std::abs(c - mm1) <= tol * std::max(1.0, mm1);

    std::ostringstream detail;
    if (!report.link_curvature_constant) {
        detail << "condition 1 fails: S(h(0)) varies over the link (range [" << *lo << ", " << *hi << "])";
    } else if (!(c > 0.0)) {
        detail << "condition 1 fails: S(h(0)) = " << c << " is not positive";
    }
    if (!report.trace_condition) {
        if (!detail.str().empty()) detail << "; ";
        detail << "condition 2 fails: boundary trace sum h^{kl} dh_{kl}/dx = " << report.trace_value
               << " (mean curvature not asymptotic to -m/x)";
    }

    if (!report.link_curvature_constant || !(c > 0.0) || !report.trace_condition) {
        report.verdict = Verdict::Obstructed;
        report.detail = detail.str();
        return report;
    }

    report.rescale_factor = c / mm1;
    report.cone_angle = std::sqrt(report.rescale_factor);
    for (const AlphaRoot& root : alpha_exponents(c, m)) {
        if (root.admissible) report.admissible_alpha.push_back(root.alpha);
    }
    if (report.normalized) {
        report.verdict = Verdict::DeformableNormalized;
        detail << "S(h(0)) = m(m-1) = " << mm1 << " and the boundary trace vanishes";
    } else {
        report.verdict = Verdict::DeformableAfterRescale;
        detail << "S(h(0)) = " << c << " != m(m-1) = " << mm1 << "; scale h(0) by " << report.rescale_factor
               << " (cone angle " << report.cone_angle << ")";
    }
    report.detail = detail.str();
    return report;
}

std::vector<AlphaRoot> alpha_exponents(double c, int m) {
    if (!(c > 0.0)) throw DomainError("alpha_exponents: c must be positive");
    if (m < 2) throw DomainError("alpha_exponents: m must be >= 2");
    const double half = 0.5 * (m - 1.0);
    const double root = std::sqrt(m * (m - 1.0) / c);
    std::vector<AlphaRoot> roots;
    for (double sign : {1.0, -1.0}) {
        AlphaRoot r;
        r.alpha = half * (-1.0 + sign * root);
        r.metric_exponent = 4.0 * r.alpha / (m - 1.0);
        r.admissible = r.metric_exponent > -2.0;
        roots.push_back(r);
    }
    return roots;
}

AlphaConsistency alpha_consistency(double c, int m, double tol) {
    AlphaConsistency out;
    for (const AlphaRoot& r : alpha_exponents(c, m)) {
        if (r.admissible) out.exponent_roots.push_back(r.alpha);
    }
    const double half = 0.5 * (m - 1.0);
    const double spread = std::sqrt(c * (m - 1.0)) / (2.0 * std::sqrt(static_cast<double>(m)));
    out.coefficient_roots = {-half + spread, -half - spread};
    for (double a : out.exponent_roots) {
        const bool shared = std::any_of(out.coefficient_roots.begin(), out.coefficient_roots.end(),
                                        [&](double b) { return std::abs(a - b) <= tol; });
        if (shared) out.common_roots.push_back(a);
    }
    out.intersect = !out.common_roots.empty();
    out.consistent_only_at_zero =
        out.intersect && std::all_of(out.common_roots.begin(), out.common_roots.end(),
                                     [&](double a) { return std::abs(a) <= tol; });
    return out;
}

} // namespace conic
