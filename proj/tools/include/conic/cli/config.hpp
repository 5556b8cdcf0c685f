#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace conic::cli {

struct MetricSpec {
    std::string warping;
    int m = 2;
    double x_max = 1.0;
    std::string link = "round";           // round | constant | axisymmetric
    std::optional<double> link_curvature;  // S(h0) for a constant link; defaults to m(m-1)
    std::optional<double> link_volume;
    double link_amplitude = 0.0;          // axisymmetric profile rho = sin(t)(1 + amplitude sin^2(t))
    int theta_n = 33;
    double k = 2.0;                       // slope of rigid-scaled
    double sec52_base = 2.0;              // u = base + coef x^power
    double sec52_coef = 1.0;
    double sec52_power = 2.0;

    bool operator==(const MetricSpec&) const = default;
};

struct GridSpec {
    int n = 512;
    double gamma = 2.0;

    bool operator==(const GridSpec&) const = default;
};

struct SolverSpec {
    double step_tol = 1e-10;
    double residual_tol = 1e-8;
    int max_iterations = 500;
    std::string tip = "natural";  // natural | pinned
    double ladder_rate = 0.5;
    bool tighten = true;

    bool operator==(const SolverSpec&) const = default;
};

struct FunctionalSpec {
    double t_min = -0.5;
    double t_max = 2.0;
    int t_count = 11;

    bool operator==(const FunctionalSpec&) const = default;
};

struct OutputSpec {
    std::string dir = ".";
    bool svg = true;

    bool operator==(const OutputSpec&) const = default;
};

struct JobConfig {
    MetricSpec metric;
    GridSpec grid;
    SolverSpec solver;
    FunctionalSpec functional;
    std::string command;
    OutputSpec output;

    bool operator==(const JobConfig&) const = default;
};

inline constexpr std::string_view kCommands[] = {"curvature", "check", "barriers", "solve", "yamabe", "examples"};

class ConfigError : public std::runtime_error {
public:
    ConfigError(std::size_t line, const std::string& message);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Parses `section.key = value` lines; `#` starts a comment. Unknown keys, duplicate keys,
/// malformed values and missing required keys raise ConfigError with the offending line
/// (the line after the last one for missing keys). `run.command` may be supplied by the
/// caller instead, in which case it overrides the file.
JobConfig parse_config(std::string_view text, std::optional<std::string> command = std::nullopt);

/// Every key with its value, one per line in a fixed order; optional keys only when set.
std::string serialize_config(const JobConfig& config);

/// All recognised keys in serialisation order.
std::vector<std::string> config_keys();

} // namespace conic::cli
