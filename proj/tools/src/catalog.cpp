#include "conic/cli/catalog.hpp"

#include "conic/errors.hpp"

#include <algorithm>
#include <cmath>

namespace conic::cli {

const std::vector<CatalogEntry>& example_catalog() {
    static const std::vector<CatalogEntry> entries = {
        {"flat-cone", "psi = x: the Euclidean cone over the link, S = 0 for the unit round sphere"},
        {"rigid-scaled", "psi = k x: rigid cone with cone angle k, S x^2 = m(m-1)(1/k^2 - 1)"},
        {"sec52", "psi = x u(x), u = base + coef x^power: negative curvature near the tip, psi^2 S -> -3m(m-1) for base 2"},
        {"negcurv", "psi = x exp(x^2/2): bounded negative scalar curvature, S(0+) = -3m(m-1) - 6m"},
        {"trace-violator", "psi = x + x^2: mean-curvature trace condition fails, S ~ x^-1"},
        {"hyperbolic", "psi = sinh(l x)/l, l^2 = 1/(m(m+1)): constant scalar curvature -1"},
    };
    return entries;
}

bool in_catalog(const std::string& name) {
    const auto& c = example_catalog();
    return std::any_of(c.begin(), c.end(), [&](const CatalogEntry& e) { return e.name == name; });
}

Warping build_warping(const MetricSpec& spec) {
    Warping w;
    w.name = spec.warping;
    const double x_max = spec.x_max;
    if (spec.warping == "flat-cone") {
        w.value = [](double x) { return x; };
        w.d1 = [](double) { return 1.0; };
        w.d2 = [](double) { return 0.0; };
        w.d1_minus_slope = [](double) { return 0.0; };
        w.slope = 1.0;
        w.rigid_radius = x_max;
    } else if (spec.warping == "rigid-scaled") {
        const double k = spec.k;
        w.value = [k](double x) { return k * x; };
        w.d1 = [k](double) { return k; };
        w.d2 = [](double) { return 0.0; };
        w.d1_minus_slope = [](double) { return 0.0; };
        w.slope = k;
        w.rigid_radius = x_max;
    } else if (spec.warping == "sec52") {
        const double b = spec.sec52_base, c = spec.sec52_coef, p = spec.sec52_power;
        if (p < 1.0) throw DomainError("sec52 power must be at least 1");
        w.value = [=](double x) { return x * (b + c * std::pow(x, p)); };
        w.d1 = [=](double x) { return b + c * (1.0 + p) * std::pow(x, p); };
        w.d2 = [=](double x) { return c * p * (1.0 + p) * std::pow(x, p - 1.0); };
        w.d1_minus_slope = [=](double x) { return c * (1.0 + p) * std::pow(x, p); };
        w.slope = b;
        w.second_at_tip = p == 1.0 ? 2.0 * c : 0.0;
    } else if (spec.warping == "negcurv") {
        w.value = [](double x) { return x * std::exp(0.5 * x * x); };
        w.d1 = [](double x) { return std::exp(0.5 * x * x) * (1.0 + x * x); };
        w.d2 = [](double x) { return std::exp(0.5 * x * x) * x * (x * x + 3.0); };
        w.d1_minus_slope = [](double x) { return std::expm1(0.5 * x * x) * (1.0 + x * x) + x * x; };
        w.slope = 1.0;
    } else if (spec.warping == "trace-violator") {
        w.value = [](double x) { return x + x * x; };
        w.d1 = [](double x) { return 1.0 + 2.0 * x; };
        w.d2 = [](double) { return 2.0; };
        w.d1_minus_slope = [](double x) { return 2.0 * x; };
        w.slope = 1.0;
        w.second_at_tip = 2.0;
    } else if (spec.warping == "hyperbolic") {
        const double l = 1.0 / std::sqrt(spec.m * (spec.m + 1.0));
        w.value = [l](double x) { return std::sinh(l * x) / l; };
        w.d1 = [l](double x) { return std::cosh(l * x); };
        w.d2 = [l](double x) { return l * std::sinh(l * x); };
        w.d1_minus_slope = [l](double x) {
            const double s = std::sinh(0.5 * l * x);
            return 2.0 * s * s;
        };
        w.slope = 1.0;
    } else {
        throw DomainError("unknown warping '" + spec.warping + "'");
    }
    return w;
}

LinkMetric build_link(const MetricSpec& spec) {
    if (spec.link == "round") return LinkMetric::round_sphere(spec.m);
    if (spec.link == "constant") {
        return LinkMetric::constant_curvature(spec.m, spec.link_curvature.value_or(spec.m * (spec.m - 1.0)),
                                              spec.link_volume);
    }
    if (spec.link == "axisymmetric") {
        if (spec.m != 2) throw DomainError("the axisymmetric link needs m = 2");
        return LinkMetric::axisymmetric_sphere(spec.link_amplitude, static_cast<std::size_t>(spec.theta_n));
    }
    throw DomainError("unknown link '" + spec.link + "'");
}

ConicMetric build_metric(const MetricSpec& spec) {
    return ConicMetric(build_link(spec), build_warping(spec), spec.x_max);
}

ConicMetric catalog_metric(const std::string& name, int m) {
    MetricSpec spec;
    spec.warping = name;
    spec.m = m;
    return build_metric(spec);
}

} // namespace conic::cli
