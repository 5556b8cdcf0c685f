#pragma once

#include "conic/barriers.hpp"
#include "conic/conformal.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace conic {

/// c = max(1, sup over nodes and |t| <= a_bound of (a S + a p |t|^{4/(m-1)}) + 1), which makes
/// F(x, t) = c t - a S t - a t^p strictly increasing on [-a_bound, a_bound] and L positive.
double shift_constant(const YamabeContext& ctx, double a_bound);

enum class TipCondition {
    Natural,  // no condition at the first node: the tip cell has zero area on its inner face
    Pinned,   // Dirichlet value at the first node, driven along the ladder
};

std::string_view to_string(TipCondition tip);
TipCondition parse_tip_condition(std::string_view text);

/// Factorised tridiagonal L = -Delta + c with a zero-flux outer wall.
class LinearSystem {
public:
    LinearSystem(const Stencil& stencil, double c, TipCondition tip);

    double shift() const noexcept { return c_; }
    TipCondition tip() const noexcept { return tip_; }
    std::size_t size() const noexcept { return diag_.size(); }

    /// L w = rhs. Under Pinned the first row is the identity, so rhs[0] is the pin value.
    std::vector<double> solve(std::span<const double> rhs) const;
    /// Action of the unfactorised matrix.
    std::vector<double> apply(std::span<const double> w) const;

private:
    double c_;
    TipCondition tip_;
    std::vector<double> sub_, diag_, sup_;
    std::vector<double> pivot_, ratio_;
};

struct SolverOptions {
    double step_tolerance = 1e-10;
    double residual_tolerance = 1e-8;
    std::size_t max_iterations = 500;
    TipCondition tip = TipCondition::Natural;
    double ladder_rate = 0.5;
    double ladder_target = 1.0;
    bool tighten_barriers = true;
};

struct IterationRecord {
    std::size_t iteration = 0;
    double step = 0.0;      // max of sup-norm changes of both sequences
    double gap = 0.0;       // sup-norm distance between the sequences
    double residual = 0.0;  // sup-norm of P at the midpoint
    double lower_tip = 0.0;
    double upper_tip = 0.0;
};

struct BoundaryFit {
    double v0 = 0.0;
    double exponent = 0.0;
    double metric_exponent = 0.0;  // same fit for v^{4/(m-1)}
    bool constant_like = false;
    bool same_class = false;
    bool ok = false;
    double rms_log_residual = 0.0;
    std::string detail;
};

struct SolveReport {
    ConformalFactor v;
    ConformalFactor lower_limit;
    ConformalFactor upper_limit;
    std::size_t iterations = 0;
    bool converged = false;
    double residual_inf_norm = 0.0;
    double fixed_point_defect = 0.0;  // |L v - F(v)|_inf
    double uniqueness_gap = 0.0;
    bool monotone_certificate = false;
    double c_shift = 0.0;
    TipCondition tip = TipCondition::Natural;
    bool tightened = false;
    std::vector<double> constant_ladder_lower;
    std::vector<double> constant_ladder_upper;
    std::vector<IterationRecord> trace;
    BoundaryFit boundary;
    double fitted_boundary_exponent = 0.0;
    double max_curvature_deviation = 0.0;  // max |S(v^{4/(m-1)} g) + 1| on interior nodes
    double scaled_residual_low = 0.0;      // |P(0.9 v)|_inf
    double scaled_residual_high = 0.0;     // |P(1.1 v)|_inf
};

/// Both monotone sequences phi_k = L^-1 F(phi_{k-1}), psi_k = L^-1 F(psi_{k-1}) from the
/// barrier pair. Throws MonotonicityError when an iterate leaves the sandwich and
/// ConvergenceError at the iteration cap.
SolveReport monotone_iterate(const YamabeContext& ctx, const BarrierPair& pair, const SolverOptions& opts = {});

/// Barriers (tightened unless disabled) followed by monotone_iterate.
SolveReport solve_yamabe(const YamabeContext& ctx, const SolverOptions& opts = {});

/// Fit of |v - v(0+)| on the tip decade, also for v^{4/(m-1)}; ok when the exponent is at least 1.9.
BoundaryFit fit_boundary_expansion(const ConformalFactor& v, const RadialGrid& grid, int m);

} // namespace conic
