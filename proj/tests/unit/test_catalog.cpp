#include "support.hpp"

#include "conic/cli/catalog.hpp"
#include "conic/errors.hpp"
#include "conic/obstructions.hpp"

#include <doctest.h>

#include <cmath>

using testing::metric;

TEST_SUITE("catalog") {

TEST_CASE("entries") {
    const auto& c = conic::cli::example_catalog();
    CHECK(c.size() >= 5);
    for (const char* name : {"flat-cone", "rigid-scaled", "sec52", "negcurv", "trace-violator"}) {
        CHECK(conic::cli::in_catalog(name));
        for (int m : {2, 3, 4}) CHECK_NOTHROW(metric(name, m));
    }
    CHECK_FALSE(conic::cli::in_catalog("spiral"));
    CHECK_THROWS_AS(metric("spiral"), conic::DomainError);
}

TEST_CASE("flat cone is flat") {
    const conic::RadialGrid grid(128);
    for (int m : {2, 3, 5}) {
        const auto g = metric("flat-cone", m);
        for (std::size_t i = 0; i < grid.size(); ++i) CHECK(conic::scalar_curvature_warped(g, grid[i]) == 0.0);
    }
}

TEST_CASE("sec52: psi^2 S matches the Taylor polynomial") {
    // u = 2 + c x^2: psi^2 S = -3m(m-1) - 12 c m(m+1) x^2 - 3 c^2 m(3m+1) x^4 exactly.
    for (int m : {2, 3, 4}) {
        conic::cli::MetricSpec spec;
        spec.warping = "sec52";
        spec.m = m;
        for (double c : {1.0, 0.25}) {
            spec.sec52_coef = c;
            const auto g = conic::cli::build_metric(spec);
            for (double x : {1e-6, 1e-3, 0.05, 0.3, 1.0}) {
                const double psi = g.warping().value(x);
                const double lhs = psi * psi * conic::scalar_curvature_warped(g, x);
                const double rhs = -3.0 * m * (m - 1.0) - 12.0 * c * m * (m + 1.0) * x * x -
                                   3.0 * c * c * m * (3.0 * m + 1.0) * std::pow(x, 4);
                CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
                CHECK(conic::scalar_curvature_warped(g, x) < 0.0);
            }
        }
    }
}

TEST_CASE("sec52 fails boundedness and is not obstructed") {
    const auto report = conic::check_obstructions(metric("sec52"));
    CHECK(report.verdict == conic::Verdict::DeformableAfterRescale);
    CHECK_FALSE(report.scalar_curvature_bounded);
    CHECK(report.link_curvature_value == doctest::Approx(0.5));
}

TEST_CASE("constant links with explicit curvature") {
    conic::cli::MetricSpec spec;
    spec.warping = "flat-cone";
    spec.link = "constant";
    spec.link_curvature = 8.0;
    const auto g = conic::cli::build_metric(spec);
    CHECK(conic::scalar_curvature_warped(g, 0.5) == doctest::Approx((8.0 - 2.0) / 0.25));
    spec.link_curvature = -1.0;
    CHECK_THROWS_AS(conic::cli::build_metric(spec), conic::DomainError);
    spec.link_volume = 3.0;
    CHECK(conic::cli::build_metric(spec).link().volume() == 3.0);
}

}
