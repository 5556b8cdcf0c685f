#include "conic/grid.hpp"

#include "conic/errors.hpp"

#include <cmath>
#include <string>

namespace conic {

RadialGrid::RadialGrid(std::size_t n, double gamma, double x_max)
    : gamma_(gamma), x_max_(x_max) {
    if (n < kMinNodes) {
        throw GridError("radial grid needs at least " + std::to_string(kMinNodes) +
                        " nodes, got " + std::to_string(n));
    }
    if (!(gamma >= 1.0) || !std::isfinite(gamma)) {
        throw GridError("grading exponent must be >= 1");
    }
    if (!(x_max > 0.0) || !std::isfinite(x_max)) {
        throw GridError("x_max must be positive");
    }
    nodes_.resize(n);
    const double nd = static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        nodes_[i] = x_max * std::pow(static_cast<double>(i + 1) / nd, gamma);
    }
    nodes_.back() = x_max;
}

double RadialGrid::spacing(double x) const {
    const double s = std::pow(x / x_max_, 1.0 / gamma_);
    return gamma_ * x_max_ * std::pow(s, gamma_ - 1.0) / static_cast<double>(size());
}

std::vector<std::size_t> RadialGrid::indices_in(double lo, double hi) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i] >= lo && nodes_[i] <= hi) out.push_back(i);
    }
    return out;
}

} // namespace conic
