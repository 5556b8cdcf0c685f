#pragma once

#include "conic/conformal.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace conic {

/// C^2 ramp q(x): equal to x for x <= eps/2 and to eps for x >= 3 eps/2, joined by the
/// antiderivative of 1 - s(t) where s is the quintic smoothstep on t = (x - eps/2)/eps.
/// Hence 0 <= q' <= 1 and -bound/eps <= q'' <= 0 with bound = max s' = 15/8.
class Mollifier {
public:
    static constexpr double kBound = 1.875;

    explicit Mollifier(double eps);

    double eps() const noexcept { return eps_; }
    double value(double x) const;
    double d1(double x) const;
    double d2(double x) const;

private:
    double eps_;
};

struct InequalityCheck {
    std::string name;
    std::string statement;
    double lhs = 0.0;
    double rhs = 0.0;
    std::string relation;  // "<=", "<", ">=", ">"
    bool pass = false;
};

struct BarrierConstants {
    int m = 2;
    double a = 0.0;
    double x0 = 0.0;  // collar width
    double eps = 0.0;
    double A = 0.0;
    double B = Mollifier::kBound;
    double s_bar = 0.0;
    double s_under = 0.0;
    double sup_b = 0.0;
    double sup_c = 0.0;
    double sub_b = 0.0;
    double sub_c = 0.0;
};

/// Every constraint on the constants, evaluated literally. The first nine entries are
/// eps0, bc0, bc1, bc2, bc3, bcc11, bcc0, bcc1, bcc2; the ordering conditions
/// eps <= B/A, A >= 1 and sup_b > 1/eps follow.
std::vector<InequalityCheck> check_inequalities(const BarrierConstants& k);
bool all_pass(const std::vector<InequalityCheck>& checks);

/// Fixes eps from A (sup over the collar of 1, |h~|, |a x S|), then s_bar, s_under, the
/// supersolution (c at the midpoint of (2 eps, m/(2A)], b = 1.25 times its largest lower
/// bound) and the subsolution (b = 1.25 * 4B/(a s_under), c = half its smallest upper bound).
/// Throws HypothesisError when s_under = 0 or S >= 0 at some node.
BarrierConstants choose_constants(const YamabeContext& ctx);

/// psi = b (c - q(x)). Throws GridError when fewer than 8 nodes resolve [eps/2, 3eps/2].
ConformalFactor build_supersolution(const BarrierConstants& k, const RadialGrid& grid);
/// phi = c (b + eps q(x)).
ConformalFactor build_subsolution(const BarrierConstants& k, const RadialGrid& grid);

struct BarrierMargins {
    double min_p_phi = 0.0;
    double max_p_psi = 0.0;
    std::size_t worst_phi_node = 0;
    std::size_t worst_psi_node = 0;
    double tolerance = 0.0;
    bool ordered = false;  // 0 < phi <= psi at every node
    bool phi_ok = false;
    bool psi_ok = false;
    bool ok = false;
    std::string detail;  // names the region and the implicated inequality on failure
};

struct BarrierPair {
    ConformalFactor phi;
    ConformalFactor psi;
    BarrierConstants constants;
    BarrierMargins margins;
    bool tightened = false;
};

/// Checks P psi <= tol and P phi >= -tol with tol = 1e-6 max(1, s_bar), and 0 < phi <= psi.
BarrierMargins verify_barrier(const YamabeContext& ctx, const ConformalFactor& phi, const ConformalFactor& psi,
                              const BarrierConstants& k);

/// Explicit pair from choose_constants, verified.
BarrierPair build_barriers(const YamabeContext& ctx);

/// The pair clipped by the constant barriers: phi' = max(phi, min|S|^{(m-1)/4}) and
/// psi' = min(psi, max|S|^{(m-1)/4}). Constants below that bound are subsolutions and
/// constants above are supersolutions, and maxima of subsolutions (minima of
/// supersolutions) stay sub- (super-) solutions of the discrete problem.
BarrierPair tighten(const YamabeContext& ctx, const BarrierPair& pair);

} // namespace conic
