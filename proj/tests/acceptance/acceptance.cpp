// Acceptance criteria: one PASS/FAIL line each, nonzero exit status on any failure.

#include "conic/barriers.hpp"
#include "conic/cli/catalog.hpp"
#include "conic/curvature_fd.hpp"
#include "conic/fitting.hpp"
#include "conic/functionals.hpp"
#include "conic/obstructions.hpp"
#include "conic/solver.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace {

using conic::cli::catalog_metric;

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double budget_seconds;
    std::function<Outcome()> run;
};

conic::ConicMetric rigid(double k, int m) {
    conic::cli::MetricSpec spec;
    spec.warping = "rigid-scaled";
    spec.k = k;
    spec.m = m;
    return conic::cli::build_metric(spec);
}

Outcome flat_cone() {
    const auto g = catalog_metric("flat-cone", 2);
    const conic::RadialGrid grid(512, 2.0, g.x_max());
    double warped = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) warped = std::max(warped, std::abs(conic::scalar_curvature_warped(g, grid[i])));
    double fd = 0.0;
    for (double s : conic::scalar_curvature_fd(g, grid).scalar_curvature) fd = std::max(fd, std::abs(s));
    return {warped <= 1e-8 && fd <= 1e-8, fmt::format("max|S| warped {:.2e}, fd {:.2e}", warped, fd)};
}

Outcome rigid_law() {
    double worst = 0.0;
    for (int m : {2, 3}) {
        for (double k : {0.5, 2.0, 3.0}) {
            const auto g = rigid(k, m);
            const conic::RadialGrid grid(512, 2.0, g.x_max());
            const double expected = m * (m - 1.0) * (1.0 / (k * k) - 1.0);
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const double x = grid[i];
                const double got = conic::scalar_curvature_warped(g, x) * x * x;
                worst = std::max(worst, std::abs(got - expected) / std::abs(expected));
            }
        }
    }
    return {worst <= 1e-10, fmt::format("max relative deviation of S x^2 {:.2e}", worst)};
}

Outcome oracle_equivalence() {
    bool ok = true;
    std::string detail;
    for (const char* name : {"negcurv", "sec52", "trace-violator"}) {
        const auto g = catalog_metric(name, 2);
        std::vector<double> errors;
        for (std::size_t n : {128, 256, 512}) {
            const conic::RadialGrid grid(n, 2.0, g.x_max());
            const auto fd = conic::scalar_curvature_fd(g, grid);
            double err = 0.0;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                if (grid[i] < g.x_max() / 16.0) continue;
                err = std::max(err, std::abs(fd.at(i) - conic::scalar_curvature_warped(g, grid[i])));
            }
            errors.push_back(err);
        }
        const double order = conic::observed_order(errors);
        ok = ok && order >= 1.8;
        detail += fmt::format("{}{} order {:.3f}", detail.empty() ? "" : ", ", name, order);
    }
    return {ok, detail};
}

Outcome obstruction_gate() {
    using conic::Verdict;
    const auto flat = conic::check_obstructions(catalog_metric("flat-cone"), 1e-8);
    const auto neg = conic::check_obstructions(catalog_metric("negcurv"), 1e-8);
    const auto trace = conic::check_obstructions(catalog_metric("trace-violator"), 1e-8);
    const auto scaled = conic::check_obstructions(catalog_metric("rigid-scaled"), 1e-8);
    const auto sec52 = conic::check_obstructions(catalog_metric("sec52"), 1e-8);
    const bool pass_ok = flat.verdict == Verdict::DeformableNormalized && flat.scalar_curvature_bounded &&
                         neg.verdict == Verdict::DeformableNormalized && neg.scalar_curvature_bounded;
    const bool trace_ok = trace.verdict == Verdict::Obstructed && !trace.trace_condition;
    const bool scaled_ok = !scaled.normalized && !scaled.scalar_curvature_bounded && scaled.trace_condition;
    // sec52 as built (psi'(0) = 2 on the unit round link) is off-normalized like rigid-scaled.
    const bool sec52_ok = !sec52.normalized && sec52.trace_condition;
    return {pass_ok && trace_ok && scaled_ok && sec52_ok,
            fmt::format("flat-cone {}, negcurv {}, trace-violator {} (trace {:.3g}), rigid-scaled {} (c = {:.3g}), sec52 {} (c = {:.3g})",
                        to_string(flat.verdict), to_string(neg.verdict), to_string(trace.verdict), trace.trace_value,
                        to_string(scaled.verdict), scaled.link_curvature_value, to_string(sec52.verdict),
                        sec52.link_curvature_value)};
}

Outcome alpha_reproduction() {
    bool ok = true;
    int hits = 0;
    for (int m = 2; m <= 6; ++m) {
        const double target = m * (m - 1.0);
        for (int j = 0; j < 100; ++j) {
            // 99 points of (0, 4 m(m-1)] plus c = m(m-1) itself.
            const double c = j == 99 ? target : 4.0 * target * (j + 1) / 99.0;
            const auto r = conic::alpha_consistency(c, m, 1e-10);
            // Independent evaluation of both root sets.
            const double s = std::sqrt(target / c);
            const double e1 = 0.5 * (m - 1.0) * (-1.0 + s), e2 = 0.5 * (m - 1.0) * (-1.0 - s);
            const double q = std::sqrt(c * (m - 1.0)) / (2.0 * std::sqrt(static_cast<double>(m)));
            const double q1 = -0.5 * (m - 1.0) + q, q2 = -0.5 * (m - 1.0) - q;
            bool common = false, common_nonzero = false;
            for (double e : {e1, e2}) {
                if (!(4.0 * e / (m - 1.0) > -2.0)) continue;
                for (double k : {q1, q2}) {
                    if (std::abs(e - k) <= 1e-10) {
                        common = true;
                        common_nonzero = common_nonzero || std::abs(e) > 1e-10;
                    }
                }
            }
            const bool at_target = std::abs(c - target) <= 1e-12 * target;
            ok = ok && r.intersect == common && common == at_target && !common_nonzero;
            ok = ok && (!at_target || r.consistent_only_at_zero);
            hits += r.intersect;
        }
    }
    return {ok && hits == 5, fmt::format("500 (m, c) pairs, intersections {} (one per m, all at alpha = 0)", hits)};
}

Outcome barrier_certification() {
    const auto g = catalog_metric("negcurv", 2);
    const conic::RadialGrid grid(512, 2.0, g.x_max());
    const conic::YamabeContext ctx(g, grid);
    const auto pair = conic::build_barriers(ctx);
    const auto checks = conic::check_inequalities(pair.constants);
    std::size_t passed = 0;
    for (const auto& c : checks) passed += c.pass;
    const double tol = 1e-6 * std::max(1.0, pair.constants.s_bar);
    const bool margins = pair.margins.max_p_psi <= tol && pair.margins.min_p_phi >= -tol && pair.margins.ordered;
    return {passed == checks.size() && margins,
            fmt::format("{}/{} inequalities, max P psi {:.3e}, min P phi {:.3e}, tol {:.2e}", passed, checks.size(),
                        pair.margins.max_p_psi, pair.margins.min_p_phi, tol)};
}

Outcome theorem_one() {
    const auto g = catalog_metric("negcurv", 2);
    const conic::RadialGrid grid(512, 2.0, g.x_max());
    const conic::YamabeContext ctx(g, grid);
    const auto r = conic::solve_yamabe(ctx);
    const bool ok = r.converged && r.monotone_certificate && r.residual_inf_norm <= 1e-8 &&
                    r.max_curvature_deviation <= 1e-6 && r.fitted_boundary_exponent >= 1.9 &&
                    r.uniqueness_gap <= 1e-8 && r.scaled_residual_low >= 1e-3 && r.scaled_residual_high >= 1e-3;
    return {ok, fmt::format("{} iterations, certificate {}, |Pv| {:.2e}, |S+1| {:.2e}, exponent of v - v(0+) {:.3f} "
                            "(v(0+) = {:.5f}), gap {:.2e}, |P(0.9v)| {:.3g}, |P(1.1v)| {:.3g}",
                            r.iterations, r.monotone_certificate, r.residual_inf_norm, r.max_curvature_deviation,
                            r.fitted_boundary_exponent, r.boundary.v0, r.uniqueness_gap, r.scaled_residual_low,
                            r.scaled_residual_high)};
}

Outcome fixed_point() {
    const auto g = catalog_metric("hyperbolic", 2);
    const conic::RadialGrid grid(512, 2.0, g.x_max());
    const auto r = conic::solve_yamabe(conic::YamabeContext(g, grid));
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) worst = std::max(worst, std::abs(r.v[i] - 1.0));
    return {worst <= 1e-10 && r.iterations <= 3, fmt::format("{} iterations, max|v - 1| {:.2e}", r.iterations, worst)};
}

Outcome sec52_family() {
    const int m = 2;
    const auto g = catalog_metric("sec52", m);
    const conic::RadialGrid grid(512, 2.0, g.x_max());
    const double eps = 0.1;
    bool negative = true;
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size() && grid[i] < eps; ++i) {
        const double x = grid[i];
        const double S = conic::scalar_curvature_warped(g, x);
        negative = negative && S < 0.0;
        const double psi = g.warping().value(x);
        // Taylor polynomial of psi^2 S for u = 2 + x^2.
        const double series = -3.0 * m * (m - 1.0) - 12.0 * m * (m + 1.0) * x * x - 3.0 * m * (3.0 * m + 1.0) * x * x * x * x;
        worst = std::max(worst, std::abs(psi * psi * S - series) / std::abs(series));
    }
    const double x0 = grid[0];
    const double limit = g.warping().value(x0) * g.warping().value(x0) * conic::scalar_curvature_warped(g, x0);
    const double lead = -3.0 * m * (m - 1.0);
    const bool ok = negative && worst <= 0.01 && std::abs(limit - lead) <= 0.01 * std::abs(lead);
    return {ok, fmt::format("S < 0 on (0, {}): {}, psi^2 S at x = {:.2e}: {:.10f} (lead {}), max relative deviation "
                            "from the expansion {:.2e}",
                            eps, negative, x0, limit, lead, worst)};
}

Outcome functional_consistency() {
    const auto g = catalog_metric("negcurv", 2);
    const conic::RadialGrid grid(512, 2.0, g.x_max());
    const conic::YamabeContext ctx(g, grid);
    const auto r = conic::solve_yamabe(ctx);
    const auto eh = conic::einstein_hilbert(ctx, r.v);
    const double closed = -std::pow(eh.volume, 2.0 / 3.0);
    const double relative = std::abs(eh.value - closed) / std::abs(closed);

    const std::vector<std::vector<double>> nested = {
        {1.0, 2.0}, {0.25, 1.0, 2.0}, {-0.5, -0.25, 0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0}};
    std::vector<double> estimates;
    bool monotone = true;
    for (const auto& params : nested) {
        estimates.push_back(conic::conic_yamabe_estimate(ctx, conic::bump_family(params)).inf_value);
        if (estimates.size() > 1) monotone = monotone && estimates.back() <= estimates[estimates.size() - 2];
        monotone = monotone && std::isfinite(estimates.back());
    }
    return {relative <= 1e-6 && monotone,
            fmt::format("EH(v) {:.10f} vs -Vol^(2/3) {:.10f} (relative {:.2e}); nested estimates {:.6f} >= {:.6f} >= {:.6f}",
                        eh.value, closed, relative, estimates[0], estimates[1], estimates[2])};
}

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "flat-cone zero curvature", 1.0, flat_cone},
        {2, "rigid-cone singular law", 1.0, rigid_law},
        {3, "oracle equivalence", 10.0, oracle_equivalence},
        {4, "obstruction gate", std::numeric_limits<double>::infinity(), obstruction_gate},
        {5, "alpha root sets", 1.0, alpha_reproduction},
        {6, "barrier certification", 5.0, barrier_certification},
        {7, "monotone iteration on negcurv", 60.0, theorem_one},
        {8, "S = -1 fixed point", std::numeric_limits<double>::infinity(), fixed_point},
        {9, "sec52 tip expansion", std::numeric_limits<double>::infinity(), sec52_family},
        {10, "functional consistency", std::numeric_limits<double>::infinity(), functional_consistency},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = seconds < c.budget_seconds;
        const bool pass = outcome.pass && in_time;
        failures += !pass;
        std::printf("%s  [%2d] %-30s %s; %.3f s%s\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                    outcome.detail.c_str(), seconds,
                    std::isfinite(c.budget_seconds) ? fmt::format(" (budget {} s)", c.budget_seconds).c_str() : "");
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
