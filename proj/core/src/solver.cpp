#include "conic/solver.hpp"

#include "conic/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace conic {

double shift_constant(const YamabeContext& ctx, double a_bound) {
    if (!(a_bound > 0.0) || !std::isfinite(a_bound)) throw DomainError("shift_constant: bound must be positive");
    const auto S = ctx.scalar_curvature();
    double s_max = -std::numeric_limits<double>::infinity();
    for (double s : S) {
        if (!std::isfinite(s)) throw HypothesisError("shift_constant: scalar curvature is not bounded on the grid");
        s_max = std::max(s_max, s);
    }
    const double a = ctx.a();
    return std::max(1.0, a * s_max + a * ctx.power() * std::pow(a_bound, 4.0 / (ctx.m() - 1.0)) + 1.0);
}

std::string_view to_string(TipCondition tip) {
    return tip == TipCondition::Natural ? "natural" : "pinned";
}

TipCondition parse_tip_condition(std::string_view text) {
    if (text == "natural") return TipCondition::Natural;
    if (text == "pinned") return TipCondition::Pinned;
    throw DomainError("tip condition must be 'natural' or 'pinned'");
}

LinearSystem::LinearSystem(const Stencil& stencil, double c, TipCondition tip) : c_(c), tip_(tip) {
    if (!(c > 0.0)) throw AssemblyError("L = -Delta + c needs c > 0");
    const std::size_t n = stencil.size();
    sub_.assign(n, 0.0);
    diag_.assign(n, 0.0);
    sup_.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        sub_[i] = -stencil.lower[i];
        sup_[i] = -stencil.upper[i];
        diag_[i] = c + stencil.lower[i] + stencil.upper[i];
    }
    if (tip == TipCondition::Pinned) {
        diag_[0] = 1.0;
        sup_[0] = 0.0;
    }
    pivot_.assign(n, 0.0);
    ratio_.assign(n, 0.0);
    pivot_[0] = diag_[0];
    for (std::size_t i = 1; i < n; ++i) {
        ratio_[i] = sub_[i] / pivot_[i - 1];
        pivot_[i] = diag_[i] - ratio_[i] * sup_[i - 1];
        if (!(pivot_[i] > 0.0)) throw AssemblyError("singular tridiagonal system at row " + std::to_string(i));
    }
}

std::vector<double> LinearSystem::solve(std::span<const double> rhs) const {
    const std::size_t n = size();
    if (rhs.size() != n) throw DomainError("LinearSystem::solve: size mismatch");
    std::vector<double> y(rhs.begin(), rhs.end());
    for (std::size_t i = 1; i < n; ++i) y[i] -= ratio_[i] * y[i - 1];
    y[n - 1] /= pivot_[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) y[i] = (y[i] - sup_[i] * y[i + 1]) / pivot_[i];
    return y;
}

std::vector<double> LinearSystem::apply(std::span<const double> w) const {
    const std::size_t n = size();
    if (w.size() != n) throw DomainError("LinearSystem::apply: size mismatch");
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = diag_[i] * w[i];
        if (i > 0) sum += sub_[i] * w[i - 1];
        if (i + 1 < n) sum += sup_[i] * w[i + 1];
        out[i] = sum;
    }
    return out;
}

namespace {

double nonlinearity(const YamabeContext& ctx, std::size_t i, double t) {
    const double a = ctx.a();
    return -a * ctx.scalar_curvature()[i] * t - a * std::pow(t, ctx.power());
}

// One application of L^-1 F, rebased on the previous tip value.
ConformalFactor iterate_once(const YamabeContext& ctx, const LinearSystem& L, const ConformalFactor& v,
                             double pin) {
    const std::size_t n = v.size();
    ConformalFactor w;
    w.base = v.base + v.offset[0];
    std::vector<double> rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double vi = v[i];
        if (!(vi > 0.0)) throw DomainError("iterate is not positive at node " + std::to_string(i));
        rhs[i] = L.shift() * (v.offset[i] - v.offset[0]) + nonlinearity(ctx, i, vi);
    }
    if (L.tip() == TipCondition::Pinned) rhs[0] = pin - w.base;
    w.offset = L.solve(rhs);
    return w;
}

double sup_distance(const ConformalFactor& a, const ConformalFactor& b) {
    double d = 0.0;
    const double shift = a.base - b.base;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(shift + (a.offset[i] - b.offset[i])));
    return d;
}

ConformalFactor midpoint(const ConformalFactor& a, const ConformalFactor& b) {
    ConformalFactor m;
    m.base = 0.5 * (a.base + b.base);
    m.offset.resize(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) m.offset[i] = 0.5 * (a.offset[i] + b.offset[i]);
    return m;
}

double sup_norm(std::span<const double> v, std::size_t from = 0) {
    double s = 0.0;
    for (std::size_t i = from; i < v.size(); ++i) s = std::max(s, std::abs(v[i]));
    return s;
}

// Index of the first node where lo <= hi fails by more than tol, or npos.
std::size_t first_violation(const ConformalFactor& lo, const ConformalFactor& hi, double tol) {
    const double shift = lo.base - hi.base;
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (shift + (lo.offset[i] - hi.offset[i]) > tol) return i;
    }
    return static_cast<std::size_t>(-1);
}

} // namespace

SolveReport monotone_iterate(const YamabeContext& ctx, const BarrierPair& pair, const SolverOptions& opts) {
    if (pair.phi.size() != ctx.size() || pair.psi.size() != ctx.size()) {
        throw DomainError("monotone_iterate: barrier size does not match the grid");
    }
    if (!pair.margins.ok) throw HypothesisError("barrier pair is not verified: " + pair.margins.detail);
    if (opts.tip == TipCondition::Pinned && !(opts.ladder_rate > 0.0 && opts.ladder_rate < 1.0)) {
        throw DomainError("ladder rate must lie in (0, 1)");
    }

    SolveReport report;
    report.tip = opts.tip;
    report.tightened = pair.tightened;
    report.c_shift = shift_constant(ctx, pair.psi.max());
    const LinearSystem L(ctx.stencil(), report.c_shift, opts.tip);

    ConformalFactor phi = pair.phi;
    ConformalFactor psi = pair.psi;
    const double phi_tip0 = phi[0];
    const double psi_tip0 = psi[0];
    const double target = opts.ladder_target;
    const double ordering_tol = 256.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, psi.max());
    report.monotone_certificate = true;
    // A pinned tip node carries boundary data rather than the equation.
    const std::size_t first_free = opts.tip == TipCondition::Pinned ? 1 : 0;
    report.constant_ladder_lower.push_back(phi_tip0);
    report.constant_ladder_upper.push_back(psi_tip0);

    for (std::size_t k = 1; k <= opts.max_iterations; ++k) {
        const double decay = std::pow(opts.ladder_rate, static_cast<double>(k));
        const double pin_lo = target - (target - phi_tip0) * decay;
        const double pin_hi = target + (psi_tip0 - target) * decay;
        ConformalFactor phi_next = iterate_once(ctx, L, phi, pin_lo);
        ConformalFactor psi_next = iterate_once(ctx, L, psi, pin_hi);

        const struct {
            const ConformalFactor& lo;
            const ConformalFactor& hi;
            const char* what;
        } orderings[] = {{phi, phi_next, "phi_{k-1} <= phi_k"},
                         {phi_next, psi_next, "phi_k <= psi_k"},
                         {psi_next, psi, "psi_k <= psi_{k-1}"}};
        for (const auto& o : orderings) {
            const std::size_t node = first_violation(o.lo, o.hi, ordering_tol);
            if (node != static_cast<std::size_t>(-1)) {
                report.monotone_certificate = false;
                std::ostringstream msg;
                msg << "monotone sandwich broken (" << o.what << ") at iteration " << k << ", node " << node
                    << " (x = " << ctx.grid()[node] << "): " << o.lo[node] << " > " << o.hi[node]
                    << "; the grid is too coarse or the shift too small";
                throw MonotonicityError(msg.str(), k, node);
            }
        }

        IterationRecord rec;
        rec.iteration = k;
        rec.step = std::max(sup_distance(phi_next, phi), sup_distance(psi_next, psi));
        rec.gap = sup_distance(psi_next, phi_next);
        phi = std::move(phi_next);
        psi = std::move(psi_next);
        const ConformalFactor mid = midpoint(phi, psi);
        rec.residual = sup_norm(yamabe_residual(ctx, mid), first_free);
        rec.lower_tip = phi[0];
        rec.upper_tip = psi[0];
        report.trace.push_back(rec);
        report.constant_ladder_lower.push_back(phi[0]);
        report.constant_ladder_upper.push_back(psi[0]);
        report.iterations = k;

        if (rec.step <= opts.step_tolerance && rec.residual <= opts.residual_tolerance) {
            report.converged = true;
            break;
        }
    }
    if (!report.converged) {
        const IterationRecord& last = report.trace.back();
        std::ostringstream msg;
        msg << "monotone iteration did not converge in " << opts.max_iterations << " iterations (step " << last.step
            << ", residual " << last.residual << ", gap " << last.gap << ")";
        throw ConvergenceError(msg.str());
    }

    report.lower_limit = phi;
    report.upper_limit = psi;
    report.v = midpoint(phi, psi);
    report.uniqueness_gap = sup_distance(psi, phi);

    const std::vector<double> residual = yamabe_residual(ctx, report.v);
    report.residual_inf_norm = sup_norm(residual, first_free);
    {
        ConformalFactor shifted = report.v;
        const std::vector<double> Lv = L.apply(shifted.offset);
        double defect = 0.0;
        for (std::size_t i = 0; i < Lv.size(); ++i) {
            if (opts.tip == TipCondition::Pinned && i == 0) continue;
            const double F = report.c_shift * report.v.offset[i] + nonlinearity(ctx, i, report.v[i]);
            defect = std::max(defect, std::abs(Lv[i] - F));
        }
        report.fixed_point_defect = defect;
    }
    const std::vector<double> curvature = conformal_scalar_curvature(ctx, report.v);
    for (std::size_t i = 1; i + 1 < curvature.size(); ++i) {
        report.max_curvature_deviation = std::max(report.max_curvature_deviation, std::abs(curvature[i] + 1.0));
    }
    report.scaled_residual_low = sup_norm(yamabe_residual(ctx, report.v.scaled(0.9)));
    report.scaled_residual_high = sup_norm(yamabe_residual(ctx, report.v.scaled(1.1)));

    report.boundary = fit_boundary_expansion(report.v, ctx.grid(), ctx.m());
    report.fitted_boundary_exponent = report.boundary.exponent;
    report.v.boundary_constant = report.boundary.v0;
    report.v.fitted_exponent = report.boundary.exponent;
    return report;
}

SolveReport solve_yamabe(const YamabeContext& ctx, const SolverOptions& opts) {
    BarrierPair pair = build_barriers(ctx);
    if (!pair.margins.ok) throw HypothesisError("barrier verification failed: " + pair.margins.detail);
    if (opts.tighten_barriers && opts.tip == TipCondition::Natural) pair = tighten(ctx, pair);
    return monotone_iterate(ctx, pair, opts);
}

BoundaryFit fit_boundary_expansion(const ConformalFactor& v, const RadialGrid& grid, int m) {
    BoundaryFit fit;
    const PreservationReport direct = conic_preservation(v, grid);
    const double q = 4.0 / (m - 1.0);
    const double tip = v[0];
    // (tip + d)^q = tip^q (1 + expm1(q log1p(d/tip))) keeps small differences accurate.
    ConformalFactor power = ConformalFactor::constant(v.size(), std::pow(tip, q));
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double d = v.offset[i] - v.offset[0];
        power.offset[i] = power.base * std::expm1(q * std::log1p(d / tip));
    }
    const PreservationReport metric = conic_preservation(power, grid);

    fit.v0 = direct.u0;
    fit.exponent = direct.exponent;
    fit.metric_exponent = metric.exponent;
    fit.constant_like = direct.constant_like;
    fit.rms_log_residual = direct.rms_log_residual;
    fit.same_class = direct.preserves == metric.preserves;
    fit.ok = !direct.diverges && fit.v0 > 0.0 && (direct.constant_like || direct.exponent >= 1.9) && fit.same_class;
    std::ostringstream msg;
    msg << direct.detail << "; v^{4/(m-1)}: " << metric.detail;
    if (direct.rms_log_residual > 0.1) msg << " (large fit residual " << direct.rms_log_residual << ")";
    fit.detail = msg.str();
    return fit;
}

} // namespace conic
