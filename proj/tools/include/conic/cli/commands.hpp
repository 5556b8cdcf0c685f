#pragma once

#include "conic/barriers.hpp"
#include "conic/cli/config.hpp"
#include "conic/functionals.hpp"
#include "conic/obstructions.hpp"
#include "conic/solver.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

namespace conic::cli {

enum ExitCode : int { kOk = 0, kInternal = 1, kHypothesis = 2 };

/// Executes config.command, writing its artifacts under config.output.dir.
/// Listing output (the `examples` command) goes to `out`.
/// Hypothesis and obstruction failures give kHypothesis; everything else that throws, kInternal.
int run(const JobConfig& config, std::ostream& out);

SolverOptions solver_options(const SolverSpec& spec);

nlohmann::json to_json(const ObstructionReport& report);
nlohmann::json to_json(const BarrierConstants& constants, const std::vector<InequalityCheck>& checks);
nlohmann::json to_json(const BarrierMargins& margins);
nlohmann::json to_json(const SolveReport& report);

/// Two stacked polyline panels, (x, v) above (x, S of the conformal metric).
void write_profile_svg(const std::filesystem::path& path, std::span<const double> x, std::span<const double> v,
                       std::span<const double> curvature);

} // namespace conic::cli
