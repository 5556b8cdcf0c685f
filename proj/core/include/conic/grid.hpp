#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace conic {

/// Graded radial mesh on (0, x_max]: node i (0-based) sits at x_max * ((i + 1) / N)^gamma,
/// so nodes[0] = x_max * N^-gamma and nodes[N-1] = x_max. Clustering at the cone tip
/// resolves the O(x^2) boundary behaviour.
class RadialGrid {
public:
    static constexpr std::size_t kMinNodes = 64;

    RadialGrid(std::size_t n, double gamma = 2.0, double x_max = 1.0);

    std::size_t size() const noexcept { return nodes_.size(); }
    double gamma() const noexcept { return gamma_; }
    double x_max() const noexcept { return x_max_; }

    std::span<const double> nodes() const noexcept { return nodes_; }
    double operator[](std::size_t i) const { return nodes_[i]; }

    /// Continuous mesh-size function dx/di evaluated at x; halves exactly under N -> 2N.
    double spacing(double x) const;

    /// Indices of nodes with lo <= x <= hi.
    std::vector<std::size_t> indices_in(double lo, double hi) const;

    /// Same grid with twice the nodes; every node of *this is a node of the result.
    RadialGrid refined() const { return RadialGrid(2 * size(), gamma_, x_max_); }

private:
    double gamma_;
    double x_max_;
    std::vector<double> nodes_;
};

} // namespace conic
