#include "conic/cli/commands.hpp"

#include "conic/cli/catalog.hpp"
#include "conic/curvature_fd.hpp"
#include "conic/errors.hpp"

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <cmath>
#include <fstream>
#include <ostream>

namespace conic::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json number(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return nullptr;
    return v > 0 ? "inf" : "-inf";
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("failed writing " + path.string());
    spdlog::info("wrote {}", path.string());
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

std::string csv_row(std::initializer_list<double> values) {
    std::string row;
    for (double v : values) row += (row.empty() ? "" : ",") + fmt::format("{}", v);
    return row + "\n";
}

struct Job {
    const JobConfig& config;
    fs::path dir;
    ConicMetric metric;
    RadialGrid grid;

    explicit Job(const JobConfig& c)
        : config(c),
          dir(c.output.dir),
          metric(build_metric(c.metric)),
          grid(static_cast<std::size_t>(c.grid.n), c.grid.gamma, c.metric.x_max) {
        fs::create_directories(dir);
    }
};

int cmd_curvature(Job& job) {
    const CurvatureProfile profile = curvature_profile(job.metric, job.grid);
    const bool axisymmetric = !profile.theta.empty();
    std::string csv = axisymmetric ? "x,theta,S,Sxx2\n" : "x,S,Sxx2\n";
    for (std::size_t r = 0; r < profile.x.size(); ++r) {
        const double x = profile.x[r];
        const double S = profile.scalar_curvature[r];
        csv += axisymmetric ? csv_row({x, profile.theta[r], S, S * x * x}) : csv_row({x, S, S * x * x});
    }
    write_text(job.dir / "curvature.csv", csv);
    spdlog::info("x^-2 coefficient {}, x^-1 coefficient {}, bounded at tip: {}", profile.singular.inverse_square[0],
                 profile.singular.inverse_linear[0], profile.bounded_at_boundary);
    return kOk;
}

int cmd_check(Job& job) {
    const ObstructionReport report = check_obstructions(job.metric);
    write_json(job.dir / "obstructions.json", to_json(report));
    spdlog::info("verdict {}: {}", to_string(report.verdict), report.detail);
    return report.verdict == Verdict::Obstructed ? kHypothesis : kOk;
}

int cmd_barriers(Job& job) {
    const YamabeContext ctx(job.metric, job.grid);
    const BarrierPair pair = build_barriers(ctx);
    const BarrierPair tight = tighten(ctx, pair);

    json j;
    j["constants"] = to_json(pair.constants, check_inequalities(pair.constants));
    j["margins"] = to_json(pair.margins);
    j["tightened_margins"] = to_json(tight.margins);
    write_json(job.dir / "barriers.json", j);

    const std::vector<double> p_phi = yamabe_residual(ctx, pair.phi);
    const std::vector<double> p_psi = yamabe_residual(ctx, pair.psi);
    std::string csv = "x,phi,psi,Pphi,Ppsi\n";
    for (std::size_t i = 0; i < job.grid.size(); ++i) {
        csv += csv_row({job.grid[i], pair.phi[i], pair.psi[i], p_phi[i], p_psi[i]});
    }
    write_text(job.dir / "barriers.csv", csv);
    if (!pair.margins.ok) {
        spdlog::error("barrier verification failed: {}", pair.margins.detail);
        return kHypothesis;
    }
    spdlog::info("barriers verified: min P phi = {}, max P psi = {}", pair.margins.min_p_phi, pair.margins.max_p_psi);
    return kOk;
}

void write_profile(const Job& job, const YamabeContext& ctx, const SolveReport& report) {
    const int m = ctx.m();
    const std::vector<double> pv = yamabe_residual(ctx, report.v);
    const std::vector<double> curvature = conformal_scalar_curvature(ctx, report.v);
    std::string csv = "x,v,v_pow,Pv,S_conformal\n";
    std::vector<double> v(job.grid.size());
    for (std::size_t i = 0; i < job.grid.size(); ++i) {
        v[i] = report.v[i];
        csv += csv_row({job.grid[i], v[i], std::pow(v[i], 4.0 / (m - 1.0)), pv[i], curvature[i]});
    }
    write_text(job.dir / "profile.csv", csv);
    if (job.config.output.svg) {
        write_profile_svg(job.dir / "profile.svg", job.grid.nodes(), v, curvature);
        spdlog::info("wrote {}", (job.dir / "profile.svg").string());
    }
}

int cmd_solve(Job& job) {
    const YamabeContext ctx(job.metric, job.grid);
    const SolveReport report = solve_yamabe(ctx, solver_options(job.config.solver));
    write_json(job.dir / "solve.json", to_json(report));
    write_profile(job, ctx, report);
    if (!report.boundary.ok) spdlog::warn("boundary expansion: {}", report.boundary.detail);
    spdlog::info("converged in {} iterations: |Pv| = {}, gap = {}, boundary exponent {}", report.iterations,
                 report.residual_inf_norm, report.uniqueness_gap, report.fitted_boundary_exponent);
    return kOk;
}

int cmd_yamabe(Job& job) {
    const YamabeContext ctx(job.metric, job.grid);
    const SolveReport solution = solve_yamabe(ctx, solver_options(job.config.solver));
    const EinsteinHilbert base = einstein_hilbert(job.metric, job.grid);
    const EinsteinHilbert solved = einstein_hilbert(ctx, solution.v);
    const double closed_form = -std::pow(solved.volume, 2.0 / (ctx.m() + 1.0));

    const FunctionalSpec& f = job.config.functional;
    std::vector<double> params;
    for (int i = 0; i < f.t_count; ++i) {
        params.push_back(f.t_count == 1 ? f.t_min : f.t_min + (f.t_max - f.t_min) * i / (f.t_count - 1.0));
    }
    ConformalFamily family = bump_family(params);
    const YamabeEstimate estimate = conic_yamabe_estimate(ctx, family);

    json j;
    j["base"] = {{"value", base.value}, {"total_curvature", base.total_curvature}, {"volume", base.volume}};
    j["solution"] = {{"value", solved.value},
                     {"volume", solved.volume},
                     {"closed_form", closed_form},
                     {"relative_difference", std::abs(solved.value - closed_form) / std::abs(closed_form)}};
    json skipped = json::array();
    for (const auto& s : estimate.skipped) skipped.push_back({{"parameter", s.parameter}, {"reason", s.reason}});
    j["estimate"] = {{"family", family.name},
                     {"kind", "upper bound"},
                     {"inf_value", estimate.inf_value},
                     {"argmin", estimate.argmin},
                     {"family_size", estimate.family_size},
                     {"skipped", skipped},
                     {"base_value", estimate.base_value},
                     {"below_base", estimate.below_base},
                     {"finite", estimate.finite},
                     {"below_solution", estimate.inf_value <= solved.value}};
    const bool solution_wins = solved.value < estimate.inf_value;
    j["estimate_with_solution"] = {{"inf_value", solution_wins ? solved.value : estimate.inf_value},
                                   {"argmin", solution_wins ? json("solution") : json(estimate.argmin)},
                                   {"family_size", estimate.family_size + 1}};
    write_json(job.dir / "yamabe.json", j);

    std::string csv = "t,EH\n";
    for (std::size_t i = 0; i < estimate.values.size(); ++i) csv += csv_row({estimate.parameters[i], estimate.values[i]});
    write_text(job.dir / "yamabe.csv", csv);
    spdlog::info("EH(g) = {}, EH(solution) = {}, family estimate {} at t = {}", base.value, solved.value,
                 estimate.inf_value, estimate.argmin);
    return kOk;
}

int cmd_examples(std::ostream& out) {
    for (const CatalogEntry& e : example_catalog()) out << fmt::format("{:<16} {}\n", e.name, e.description);
    return kOk;
}

} // namespace

SolverOptions solver_options(const SolverSpec& spec) {
    SolverOptions o;
    o.step_tolerance = spec.step_tol;
    o.residual_tolerance = spec.residual_tol;
    o.max_iterations = static_cast<std::size_t>(spec.max_iterations);
    o.tip = parse_tip_condition(spec.tip);
    o.ladder_rate = spec.ladder_rate;
    o.tighten_barriers = spec.tighten;
    return o;
}

json to_json(const ObstructionReport& r) {
    json alpha = json::array();
    for (double a : r.admissible_alpha) alpha.push_back(a);
    return {{"m", r.m},
            {"link_curvature_constant", r.link_curvature_constant},
            {"link_curvature_value", number(r.link_curvature_value)},
            {"trace_condition", r.trace_condition},
            {"trace_value", number(r.trace_value)},
            {"normalized", r.normalized},
            {"scalar_curvature_bounded", r.scalar_curvature_bounded},
            {"admissible_alpha", alpha},
            {"rescale_factor", number(r.rescale_factor)},
            {"cone_angle", number(r.cone_angle)},
            {"verdict", std::string(to_string(r.verdict))},
            {"detail", r.detail}};
}

json to_json(const BarrierConstants& k, const std::vector<InequalityCheck>& checks) {
    json list = json::array();
    for (const InequalityCheck& c : checks) {
        list.push_back({{"name", c.name},
                        {"statement", c.statement},
                        {"lhs", number(c.lhs)},
                        {"relation", c.relation},
                        {"rhs", number(c.rhs)},
                        {"pass", c.pass}});
    }
    return {{"m", k.m},         {"a", k.a},         {"x0", k.x0},         {"eps", k.eps},
            {"A", k.A},         {"B", k.B},         {"s_bar", k.s_bar},   {"s_under", k.s_under},
            {"sup_b", k.sup_b}, {"sup_c", k.sup_c}, {"sub_b", k.sub_b},   {"sub_c", k.sub_c},
            {"inequalities", list}, {"all_pass", all_pass(checks)}};
}

json to_json(const BarrierMargins& m) {
    return {{"min_p_phi", m.min_p_phi},   {"max_p_psi", m.max_p_psi}, {"worst_phi_node", m.worst_phi_node},
            {"worst_psi_node", m.worst_psi_node}, {"tolerance", m.tolerance}, {"ordered", m.ordered},
            {"ok", m.ok},                 {"detail", m.detail}};
}

json to_json(const SolveReport& r) {
    json trace = json::array();
    for (const IterationRecord& t : r.trace) {
        trace.push_back({{"iteration", t.iteration},
                         {"step", t.step},
                         {"gap", t.gap},
                         {"residual", t.residual},
                         {"lower_tip", t.lower_tip},
                         {"upper_tip", t.upper_tip}});
    }
    json boundary = {{"v0", r.boundary.v0},
                     {"exponent", r.boundary.constant_like ? json("indistinguishable from constant")
                                                           : number(r.boundary.exponent)},
                     {"metric_exponent", number(r.boundary.metric_exponent)},
                     {"same_class", r.boundary.same_class},
                     {"ok", r.boundary.ok},
                     {"detail", r.boundary.detail}};
    return {{"converged", r.converged},
            {"iterations", r.iterations},
            {"residual_inf_norm", r.residual_inf_norm},
            {"fixed_point_defect", r.fixed_point_defect},
            {"fitted_boundary_exponent", number(r.fitted_boundary_exponent)},
            {"boundary_expansion", boundary},
            {"monotone_certificate", r.monotone_certificate},
            {"uniqueness_gap", r.uniqueness_gap},
            {"c_shift", r.c_shift},
            {"tip_condition", std::string(to_string(r.tip))},
            {"tightened_barriers", r.tightened},
            {"max_curvature_deviation", r.max_curvature_deviation},
            {"scaled_residual", {{"k0.9", r.scaled_residual_low}, {"k1.1", r.scaled_residual_high}}},
            {"constant_ladder", {{"lower", r.constant_ladder_lower}, {"upper", r.constant_ladder_upper}}},
            {"trace", trace}};
}

int run(const JobConfig& config, std::ostream& out) {
    try {
        if (config.command == "examples") return cmd_examples(out);
        Job job(config);
        if (config.command == "curvature") return cmd_curvature(job);
        if (config.command == "check") return cmd_check(job);
        if (config.command == "barriers") return cmd_barriers(job);
        if (config.command == "solve") return cmd_solve(job);
        if (config.command == "yamabe") return cmd_yamabe(job);
        spdlog::error("unknown command '{}'", config.command);
        return kInternal;
    } catch (const HypothesisError& e) {
        spdlog::error("hypothesis not satisfied: {}", e.what());
        return kHypothesis;
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return kInternal;
    }
}

} // namespace conic::cli
