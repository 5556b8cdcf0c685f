#include "conic/barriers.hpp"

#include "conic/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace conic {

Mollifier::Mollifier(double eps) : eps_(eps) {
    if (!(eps > 0.0)) throw DomainError("mollifier width must be positive");
}

double Mollifier::value(double x) const {
    if (x <= 0.5 * eps_) return x;
    if (x >= 1.5 * eps_) return eps_;
    const double t = (x - 0.5 * eps_) / eps_;
    const double t4 = t * t * t * t;
    return 0.5 * eps_ + eps_ * (t - t4 * t * t + 3.0 * t4 * t - 2.5 * t4);
}

double Mollifier::d1(double x) const {
    if (x <= 0.5 * eps_) return 1.0;
    if (x >= 1.5 * eps_) return 0.0;
    const double t = (x - 0.5 * eps_) / eps_;
    return 1.0 - t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

double Mollifier::d2(double x) const {
    if (x <= 0.5 * eps_ || x >= 1.5 * eps_) return 0.0;
    const double t = (x - 0.5 * eps_) / eps_;
    return -30.0 * t * t * (1.0 - t) * (1.0 - t) / eps_;
}

namespace {

InequalityCheck make(std::string name, std::string statement, double lhs, std::string relation, double rhs) {
    InequalityCheck c{std::move(name), std::move(statement), lhs, rhs, std::move(relation), false};
    if (c.relation == "<=") c.pass = lhs <= rhs;
    else if (c.relation == "<") c.pass = lhs < rhs;
    else if (c.relation == ">=") c.pass = lhs >= rhs;
    else c.pass = lhs > rhs;
    return c;
}

double super_b_bound(const BarrierConstants& k) {
    const double p = (k.m + 3.0) / (k.m - 1.0);
    const double gap = k.sup_c - k.eps;
    const double inner = (k.B / k.eps + k.A + k.a * gap * k.s_bar) / (k.a * std::pow(gap, p));
    return std::pow(inner, 0.25 * (k.m - 1.0));
}

double sub_c_bcc0(const BarrierConstants& k) {
    return std::pow(0.5 * k.s_under, 0.25 * (k.m - 1.0)) / (k.sub_b + k.eps * k.eps);
}

double sub_c_bcc1(const BarrierConstants& k) {
    const double q = 0.25 * (k.m - 1.0);
    return std::pow(k.m, q) / (std::pow(k.a, q) * std::pow(k.sub_b + 0.5 * k.eps * k.eps, 0.25 * (k.m + 3.0)));
}

} // namespace

std::vector<InequalityCheck> check_inequalities(const BarrierConstants& k) {
    const double q = 0.25 * (k.m - 1.0);
    const double eps_cap = std::min({k.m / (8.0 * k.A), 0.5 * k.x0, k.A / k.m});
    std::vector<InequalityCheck> out;
    out.push_back(make("eps0", "eps <= min(m/(8A), x0/2, A/m)", k.eps, "<=", eps_cap));
    out.push_back(make("bc0", "sup_c > 2 eps", k.sup_c, ">", 2.0 * k.eps));
    out.push_back(make("bc1", "(sup_c - eps) sup_b >= s_bar^((m-1)/4)", (k.sup_c - k.eps) * k.sup_b, ">=",
                       std::pow(k.s_bar, q)));
    out.push_back(make("bc2", "sup_c <= m/(2A)", k.sup_c, "<=", k.m / (2.0 * k.A)));
    out.push_back(make("bc3", "sup_b >= [(B/eps + A + a(sup_c-eps) s_bar) / (a (sup_c-eps)^((m+3)/(m-1)))]^((m-1)/4)",
                       k.sup_b, ">=", super_b_bound(k)));
    out.push_back(make("bcc11", "sub_c < 1/(sub_b + eps)", k.sub_c, "<", 1.0 / (k.sub_b + k.eps)));
    out.push_back(make("bcc0", "sub_c <= (s_under/2)^((m-1)/4) / (sub_b + eps^2)", k.sub_c, "<=", sub_c_bcc0(k)));
    out.push_back(make("bcc1", "sub_c <= m^((m-1)/4) / (a^((m-1)/4) (sub_b + eps^2/2)^((m+3)/4))", k.sub_c, "<=",
                       sub_c_bcc1(k)));
    out.push_back(make("bcc2", "sub_b > 4B/(a s_under)", k.sub_b, ">", 4.0 * k.B / (k.a * k.s_under)));
    out.push_back(make("eps_B", "eps <= B/A", k.eps, "<=", k.B / k.A));
    out.push_back(make("A_floor", "A >= 1", k.A, ">=", 1.0));
    out.push_back(make("sup_b_eps", "sup_b > 1/eps", k.sup_b, ">", 1.0 / k.eps));
    return out;
}

bool all_pass(const std::vector<InequalityCheck>& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const InequalityCheck& c) { return c.pass; });
}

BarrierConstants choose_constants(const YamabeContext& ctx) {
    const ConicMetric& g = ctx.metric();
    const RadialGrid& grid = ctx.grid();
    const auto S = ctx.scalar_curvature();

    BarrierConstants k;
    k.m = ctx.m();
    k.a = ctx.a();
    k.x0 = g.x_max();
    k.A = 1.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid[i];
        k.A = std::max({k.A, std::abs(g.log_volume_derivative(x)), std::abs(k.a * x * S[i])});
    }
    k.eps = std::min({k.m / (8.0 * k.A), 0.5 * k.x0, k.A / k.m, k.B / k.A});

    k.s_bar = 1.0;
    k.s_under = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < 0.5 * k.eps) continue;
        k.s_bar = std::max(k.s_bar, std::abs(S[i]));
        k.s_under = std::min(k.s_under, std::abs(S[i]));
    }
    if (!(k.s_under > 0.0)) {
        throw HypothesisError("scalar curvature vanishes on {x >= eps/2}: the subsolution bound sub_b > 4B/(a s_under) "
                              "(bcc2) divides by s_under = 0");
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(S[i] < 0.0)) {
            std::ostringstream msg;
            msg << "scalar curvature must be negative on X; S = " << S[i] << " at x = " << grid[i];
            throw HypothesisError(msg.str());
        }
    }

    const double q = 0.25 * (k.m - 1.0);
    k.sup_c = 0.5 * (2.0 * k.eps + k.m / (2.0 * k.A));
    k.sup_b = 0.0;
    k.sup_b = 1.25 * std::max({1.0 / k.eps, std::pow(k.s_bar, q) / (k.sup_c - k.eps), super_b_bound(k)});

    k.sub_b = 1.25 * 4.0 * k.B / (k.a * k.s_under);
    k.sub_c = 0.5 * std::min({1.0 / (k.sub_b + k.eps), sub_c_bcc0(k), sub_c_bcc1(k)});

    for (const InequalityCheck& c : check_inequalities(k)) {
        if (!c.pass) {
            std::ostringstream msg;
            msg << "barrier constant inequality " << c.name << " fails: " << c.lhs << " " << c.relation << " " << c.rhs;
            throw HypothesisError(msg.str());
        }
    }
    return k;
}

namespace {

void require_blend_resolved(const BarrierConstants& k, const RadialGrid& grid) {
    const std::size_t count = grid.indices_in(0.5 * k.eps, 1.5 * k.eps).size();
    if (count < 8) {
        throw GridError("grid resolves the blend window [eps/2, 3eps/2] with " + std::to_string(count) +
                        " nodes, need at least 8");
    }
}

} // namespace

ConformalFactor build_supersolution(const BarrierConstants& k, const RadialGrid& grid) {
    require_blend_resolved(k, grid);
    const Mollifier q(k.eps);
    // psi = b c - b q(x): keep b c as the base so node differences are exact.
    ConformalFactor psi = ConformalFactor::constant(grid.size(), k.sup_b * k.sup_c);
    for (std::size_t i = 0; i < grid.size(); ++i) psi.offset[i] = -k.sup_b * q.value(grid[i]);
    psi.boundary_constant = psi.base;
    return psi;
}

ConformalFactor build_subsolution(const BarrierConstants& k, const RadialGrid& grid) {
    require_blend_resolved(k, grid);
    const Mollifier q(k.eps);
    ConformalFactor phi = ConformalFactor::constant(grid.size(), k.sub_c * k.sub_b);
    for (std::size_t i = 0; i < grid.size(); ++i) phi.offset[i] = k.sub_c * k.eps * q.value(grid[i]);
    phi.boundary_constant = phi.base;
    return phi;
}

namespace {

std::string region_of(double x, double eps, bool super) {
    if (x < 0.5 * eps) return super ? "tip region x < eps/2 (bc2)" : "tip region x < eps/2 (bcc1)";
    if (x <= 1.5 * eps) return super ? "blend region [eps/2, 3eps/2] (bc3)" : "blend region [eps/2, 3eps/2] (bcc2)";
    return super ? "outer region x > 3eps/2 (bc1)" : "outer region x > 3eps/2 (bcc0)";
}

} // namespace

BarrierMargins verify_barrier(const YamabeContext& ctx, const ConformalFactor& phi, const ConformalFactor& psi,
                              const BarrierConstants& k) {
    BarrierMargins out;
    out.tolerance = 1e-6 * std::max(1.0, k.s_bar);
    out.ordered = true;
    for (std::size_t i = 0; i < phi.size(); ++i) {
        if (!(phi[i] > 0.0) || phi[i] > psi[i]) {
            out.ordered = false;
            break;
        }
    }
    const std::vector<double> p_phi = yamabe_residual(ctx, phi);
    const std::vector<double> p_psi = yamabe_residual(ctx, psi);
    const auto lo = std::min_element(p_phi.begin(), p_phi.end());
    const auto hi = std::max_element(p_psi.begin(), p_psi.end());
    out.min_p_phi = *lo;
    out.max_p_psi = *hi;
    out.worst_phi_node = static_cast<std::size_t>(lo - p_phi.begin());
    out.worst_psi_node = static_cast<std::size_t>(hi - p_psi.begin());
    out.phi_ok = out.min_p_phi >= -out.tolerance;
    out.psi_ok = out.max_p_psi <= out.tolerance;
    out.ok = out.ordered && out.phi_ok && out.psi_ok;

    std::ostringstream detail;
    const RadialGrid& grid = ctx.grid();
    if (!out.ordered) detail << "barriers are not ordered 0 < phi <= psi; ";
    if (!out.psi_ok) {
        detail << "P psi = " << out.max_p_psi << " > " << out.tolerance << " at node " << out.worst_psi_node
               << " (x = " << grid[out.worst_psi_node] << ", " << region_of(grid[out.worst_psi_node], k.eps, true)
               << "); ";
    }
    if (!out.phi_ok) {
        detail << "P phi = " << out.min_p_phi << " < " << -out.tolerance << " at node " << out.worst_phi_node
               << " (x = " << grid[out.worst_phi_node] << ", " << region_of(grid[out.worst_phi_node], k.eps, false)
               << "); ";
    }
    out.detail = out.ok ? "P psi <= 0 <= P phi within tolerance" : detail.str();
    return out;
}

BarrierPair build_barriers(const YamabeContext& ctx) {
    BarrierPair pair;
    pair.constants = choose_constants(ctx);
    pair.phi = build_subsolution(pair.constants, ctx.grid());
    pair.psi = build_supersolution(pair.constants, ctx.grid());
    pair.margins = verify_barrier(ctx, pair.phi, pair.psi, pair.constants);
    return pair;
}

BarrierPair tighten(const YamabeContext& ctx, const BarrierPair& pair) {
    const auto S = ctx.scalar_curvature();
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (double s : S) {
        lo = std::min(lo, std::abs(s));
        hi = std::max(hi, std::abs(s));
    }
    const double q = 0.25 * (ctx.m() - 1.0);
    const double floor = std::pow(lo, q);
    const double ceiling = std::pow(hi, q);

    BarrierPair out = pair;
    out.tightened = true;
    // Rebase onto the constants so clipped nodes carry zero offset.
    out.phi = ConformalFactor::constant(pair.phi.size(), floor);
    out.psi = ConformalFactor::constant(pair.psi.size(), ceiling);
    for (std::size_t i = 0; i < pair.phi.size(); ++i) {
        out.phi.offset[i] = std::max(0.0, (pair.phi.base - floor) + pair.phi.offset[i]);
        out.psi.offset[i] = std::min(0.0, (pair.psi.base - ceiling) + pair.psi.offset[i]);
    }
    out.phi.boundary_constant = out.phi[0];
    out.psi.boundary_constant = out.psi[0];
    out.margins = verify_barrier(ctx, out.phi, out.psi, out.constants);
    return out;
}

} // namespace conic
