#include "conic/errors.hpp"
#include "conic/fitting.hpp"
#include "conic/grid.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

TEST_SUITE("grid") {

TEST_CASE("graded nodes follow x_max ((i+1)/N)^gamma") {
    const conic::RadialGrid grid(64, 2.0, 1.0);
    CHECK(grid.size() == 64);
    CHECK(grid[0] == doctest::Approx(1.0 / 4096.0));
    CHECK(grid[63] == doctest::Approx(1.0));
    CHECK(grid[31] == doctest::Approx(0.25));
    for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
}

TEST_CASE("refinement nests the nodes") {
    const conic::RadialGrid coarse(64, 2.0, 2.0);
    const conic::RadialGrid fine = coarse.refined();
    REQUIRE(fine.size() == 128);
    for (std::size_t i = 0; i < coarse.size(); ++i) CHECK(fine[2 * i + 1] == doctest::Approx(coarse[i]).epsilon(1e-15));
}

TEST_CASE("spacing matches the node gaps and halves under refinement") {
    const conic::RadialGrid grid(256, 2.0, 1.0);
    const double mid = 0.5 * (grid[100] + grid[101]);
    CHECK(grid.spacing(mid) == doctest::Approx(grid[101] - grid[100]).epsilon(1e-3));
    CHECK(grid.refined().spacing(0.3) == doctest::Approx(0.5 * grid.spacing(0.3)));
}

TEST_CASE("too few nodes or bad parameters are rejected") {
    CHECK_THROWS_AS(conic::RadialGrid(63), conic::GridError);
    CHECK_THROWS_AS(conic::RadialGrid(64, 0.0), conic::GridError);
    CHECK_THROWS_AS(conic::RadialGrid(64, 2.0, -1.0), conic::GridError);
}

TEST_CASE("indices_in selects a closed window") {
    const conic::RadialGrid grid(128);
    const auto idx = grid.indices_in(0.01, 0.1);
    REQUIRE(!idx.empty());
    for (auto i : idx) {
        CHECK(grid[i] >= 0.01);
        CHECK(grid[i] <= 0.1);
    }
    CHECK(grid[idx.front() - 1] < 0.01);
    CHECK(grid[idx.back() + 1] > 0.1);
}

TEST_CASE("power-law fit recovers exponents") {
    std::vector<double> x, y;
    for (int i = 1; i <= 20; ++i) {
        x.push_back(0.01 * i);
        y.push_back(3.0 * std::pow(0.01 * i, 1.7));
    }
    const auto fit = conic::fit_power_law(x, y);
    CHECK(fit.exponent == doctest::Approx(1.7).epsilon(1e-12));
    CHECK(std::exp(fit.log_prefactor) == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(fit.rms_log_residual < 1e-12);
    const std::vector<double> errors = {1.0, 0.25, 0.0625};
    CHECK(conic::observed_order(errors) == doctest::Approx(2.0));
    const std::vector<double> bad = {1.0, -1.0};
    CHECK_THROWS_AS(conic::fit_power_law(bad, bad), conic::DomainError);
}

}
