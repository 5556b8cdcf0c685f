#include "conic/curvature_fd.hpp"

#include "conic/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

namespace conic {

namespace {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Gamma[k](i, j) = Gamma^k_{ij}
using Christoffel = std::vector<Matrix>;

Matrix evaluate(const MetricField& metric, const Vector& p) {
    const auto n = p.size();
    Matrix g(n, n);
    metric(std::span<const double>(p.data(), static_cast<std::size_t>(n)),
           std::span<double>(g.data(), static_cast<std::size_t>(n * n)));
    // Column-major storage of a symmetric matrix equals its row-major transpose.
    return g;
}

Matrix inverse_or_throw(const Matrix& g, const Vector& p) {
    Eigen::FullPivLU<Matrix> lu(g);
    if (!lu.isInvertible() || !g.allFinite()) {
        std::string where;
        for (Eigen::Index i = 0; i < p.size(); ++i) where += (i ? ", " : "") + std::to_string(p[i]);
        throw AssemblyError("singular metric matrix at point (" + where + ")");
    }
    return lu.inverse();
}

Christoffel christoffel(const MetricField& metric, const Vector& p, double h) {
    const auto n = p.size();
    std::vector<Matrix> dg(static_cast<std::size_t>(n));
    for (Eigen::Index l = 0; l < n; ++l) {
        Vector plus = p, minus = p;
        plus[l] += h;
        minus[l] -= h;
        dg[l] = (evaluate(metric, plus) - evaluate(metric, minus)) / (2.0 * h);
    }
    const Matrix ginv = inverse_or_throw(evaluate(metric, p), p);
    Christoffel gamma(static_cast<std::size_t>(n), Matrix::Zero(n, n));
    for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = i; j < n; ++j) {
                double sum = 0.0;
                for (Eigen::Index l = 0; l < n; ++l) {
                    sum += ginv(k, l) * (dg[j](i, l) + dg[i](j, l) - dg[l](i, j));
                }
                gamma[k](i, j) = gamma[k](j, i) = 0.5 * sum;
            }
        }
    }
    return gamma;
}

} // namespace

double scalar_curvature_from_metric(const MetricField& metric, std::span<const double> point, double step) {
    if (!(step > 0.0)) throw DomainError("finite-difference step must be positive");
    const auto n = static_cast<Eigen::Index>(point.size());
    const Vector p = Eigen::Map<const Vector>(point.data(), n);

    const Christoffel gamma = christoffel(metric, p, step);
    // dgamma[d][k](i, j) = d Gamma^k_{ij} / dx^d
    std::vector<Christoffel> dgamma(static_cast<std::size_t>(n));
    for (Eigen::Index d = 0; d < n; ++d) {
        Vector plus = p, minus = p;
        plus[d] += step;
        minus[d] -= step;
        const Christoffel gp = christoffel(metric, plus, step);
        const Christoffel gm = christoffel(metric, minus, step);
        dgamma[d].resize(static_cast<std::size_t>(n));
        for (Eigen::Index k = 0; k < n; ++k) dgamma[d][k] = (gp[k] - gm[k]) / (2.0 * step);
    }

    const Matrix ginv = inverse_or_throw(evaluate(metric, p), p);
    double scalar = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            // Ricci_ij = R^k_{ikj}
            double ricci = 0.0;
            for (Eigen::Index k = 0; k < n; ++k) {
                ricci += dgamma[k][k](i, j) - dgamma[j][k](i, k);
                for (Eigen::Index m = 0; m < n; ++m) {
                    ricci += gamma[m](i, j) * gamma[k](m, k) - gamma[m](i, k) * gamma[k](m, j);
                }
            }
            scalar += ginv(i, j) * ricci;
        }
    }
    return scalar;
}

MetricField cartesian_metric(const ConicMetric& g, RadialFunction metric_multiplier) {
    if (g.link().kind() != LinkKind::ConstantCurvature || !(g.link().scalar_curvature(0) > 0.0)) {
        throw DomainError("finite-difference curvature needs a constant positive link curvature");
    }
    const int m = g.dim();
    const double r_link = std::sqrt(m * (m - 1.0) / g.link().scalar_curvature(0));
    const auto psi = g.warping().value;
    return [=](std::span<const double> z, std::span<double> out) {
        const std::size_t n = z.size();
        double r2 = 0.0;
        for (double zi : z) r2 += zi * zi;
        const double r = std::sqrt(r2);
        const double rho = r_link * psi(r) / r;
        const double tangential = rho * rho;
        const double radial = 1.0 - tangential;
        const double w = metric_multiplier ? metric_multiplier(r) : 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const double value = (i == j ? tangential : 0.0) + radial * z[i] * z[j] / r2;
                out[i * n + j] = w * value;
            }
        }
    };
}

namespace {

std::vector<double> fd_on_grid(const MetricField& metric, int m, const RadialGrid& grid) {
    const std::size_t n = static_cast<std::size_t>(m) + 1;
    std::vector<double> direction(n);
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        direction[i] = static_cast<double>(i + 1);
        norm += direction[i] * direction[i];
    }
    norm = std::sqrt(norm);
    for (double& d : direction) d /= norm;

    std::vector<double> out(grid.size());
    std::vector<double> point(n);
    for (std::size_t node = 0; node < grid.size(); ++node) {
        const double x = grid[node];
        for (std::size_t i = 0; i < n; ++i) point[i] = x * direction[i];
        const double step = std::min(grid.spacing(x), 0.25 * x);
        try {
            out[node] = scalar_curvature_from_metric(metric, point, step);
        } catch (const AssemblyError& e) {
            throw AssemblyError("node " + std::to_string(node) + " (x = " + std::to_string(x) + "): " + e.what());
        }
    }
    return out;
}

} // namespace

CurvatureProfile scalar_curvature_fd(const ConicMetric& g, const RadialGrid& grid) {
    CurvatureProfile profile;
    profile.nodes = grid.size();
    profile.link_samples = 1;
    profile.x.assign(grid.nodes().begin(), grid.nodes().end());
    profile.scalar_curvature = fd_on_grid(cartesian_metric(g), g.dim(), grid);
    profile.singular = singular_part(g);
    profile.bounded_at_boundary = profile.singular.vanishes(1e-8);
    return profile;
}

std::vector<double> scalar_curvature_fd(const ConicMetric& g, const RadialGrid& grid,
                                        const RadialFunction& metric_multiplier) {
    return fd_on_grid(cartesian_metric(g, metric_multiplier), g.dim(), grid);
}

} // namespace conic
