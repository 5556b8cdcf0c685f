#include "conic/cli/config.hpp"

#include "conic/cli/catalog.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <set>

namespace conic::cli {

ConfigError::ConfigError(std::size_t line, const std::string& message)
    : std::runtime_error(fmt::format("line {}: {}", line, message)), line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string format_real(double v) { return fmt::format("{}", v); }

double to_real(std::string_view key, std::string_view text, std::size_t line) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw ConfigError(line, fmt::format("{} expects a real number, got '{}'", key, text));
    }
    return value;
}

int to_int(std::string_view key, std::string_view text, std::size_t line) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw ConfigError(line, fmt::format("{} expects an integer, got '{}'", key, text));
    }
    return value;
}

bool to_bool(std::string_view key, std::string_view text, std::size_t line) {
    if (text == "true") return true;
    if (text == "false") return false;
    throw ConfigError(line, fmt::format("{} expects true or false, got '{}'", key, text));
}

std::string to_choice(std::string_view key, std::string_view text, std::size_t line,
                      std::initializer_list<std::string_view> choices) {
    if (std::find(choices.begin(), choices.end(), text) == choices.end()) {
        std::string list;
        for (auto c : choices) list += (list.empty() ? "" : ", ") + std::string(c);
        throw ConfigError(line, fmt::format("{} must be one of {}, got '{}'", key, list, text));
    }
    return std::string(text);
}

void require(bool ok, std::size_t line, const std::string& message) {
    if (!ok) throw ConfigError(line, message);
}

struct Field {
    std::string key;
    std::function<void(JobConfig&, std::string_view, std::size_t)> set;
    std::function<std::optional<std::string>(const JobConfig&)> get;
};

template <class Section>
Field real(std::string key, Section JobConfig::*section, double Section::*member,
           std::function<bool(double)> valid = {}, std::string rule = {}) {
    Field f;
    f.key = key;
    f.set = [=](JobConfig& c, std::string_view v, std::size_t line) {
        const double x = to_real(key, v, line);
        if (valid) require(valid(x), line, fmt::format("{} {}", key, rule));
        (c.*section).*member = x;
    };
    f.get = [=](const JobConfig& c) { return std::optional<std::string>(format_real((c.*section).*member)); };
    return f;
}

template <class Section>
Field integer(std::string key, Section JobConfig::*section, int Section::*member, std::function<bool(int)> valid,
              std::string rule) {
    Field f;
    f.key = key;
    f.set = [=](JobConfig& c, std::string_view v, std::size_t line) {
        const int x = to_int(key, v, line);
        require(valid(x), line, fmt::format("{} {}", key, rule));
        (c.*section).*member = x;
    };
    f.get = [=](const JobConfig& c) { return std::optional<std::string>(std::to_string((c.*section).*member)); };
    return f;
}

template <class Section>
Field boolean(std::string key, Section JobConfig::*section, bool Section::*member) {
    Field f;
    f.key = key;
    f.set = [=](JobConfig& c, std::string_view v, std::size_t line) { (c.*section).*member = to_bool(key, v, line); };
    f.get = [=](const JobConfig& c) {
        return std::optional<std::string>((c.*section).*member ? "true" : "false");
    };
    return f;
}

template <class Section>
Field optional_real(std::string key, Section JobConfig::*section, std::optional<double> Section::*member,
                    std::function<bool(double)> valid = {}, std::string rule = {}) {
    Field f;
    f.key = key;
    f.set = [=](JobConfig& c, std::string_view v, std::size_t line) {
        const double x = to_real(key, v, line);
        if (valid) require(valid(x), line, fmt::format("{} {}", key, rule));
        (c.*section).*member = x;
    };
    f.get = [=](const JobConfig& c) -> std::optional<std::string> {
        const auto& value = (c.*section).*member;
        if (!value) return std::nullopt;
        return format_real(*value);
    };
    return f;
}

const std::vector<Field>& fields() {
    static const std::vector<Field> table = [] {
        std::vector<Field> t;
        const auto positive = [](double x) { return x > 0.0 && std::isfinite(x); };

        Field warping;
        warping.key = "metric.warping";
        warping.set = [](JobConfig& c, std::string_view v, std::size_t line) {
            if (!in_catalog(std::string(v))) {
                std::string names;
                for (const auto& e : example_catalog()) names += (names.empty() ? "" : ", ") + e.name;
                throw ConfigError(line, fmt::format("metric.warping '{}' is not in the catalog ({})", v, names));
            }
            c.metric.warping = std::string(v);
        };
        warping.get = [](const JobConfig& c) -> std::optional<std::string> {
            if (c.metric.warping.empty()) return std::nullopt;
            return c.metric.warping;
        };
        t.push_back(warping);

        t.push_back(integer("metric.m", &JobConfig::metric, &MetricSpec::m, [](int m) { return m >= 2; },
                            "must satisfy m >= 2"));
        t.push_back(real("metric.x_max", &JobConfig::metric, &MetricSpec::x_max, positive, "must be positive"));

        Field link;
        link.key = "metric.link";
        link.set = [](JobConfig& c, std::string_view v, std::size_t line) {
            c.metric.link = to_choice("metric.link", v, line, {"round", "constant", "axisymmetric"});
        };
        link.get = [](const JobConfig& c) { return std::optional<std::string>(c.metric.link); };
        t.push_back(link);

        t.push_back(optional_real("metric.link_curvature", &JobConfig::metric, &MetricSpec::link_curvature,
                                  [](double x) { return std::isfinite(x); }, "must be finite"));
        t.push_back(optional_real("metric.link_volume", &JobConfig::metric, &MetricSpec::link_volume, positive,
                                  "must be positive"));
        t.push_back(real("metric.link_amplitude", &JobConfig::metric, &MetricSpec::link_amplitude,
                         [](double x) { return x > -1.0 && x < 1.0; }, "must lie in (-1, 1)"));
        t.push_back(integer("metric.theta_n", &JobConfig::metric, &MetricSpec::theta_n, [](int n) { return n >= 3; },
                            "must be at least 3"));
        t.push_back(real("metric.k", &JobConfig::metric, &MetricSpec::k, positive, "must be positive"));
        t.push_back(real("metric.sec52_base", &JobConfig::metric, &MetricSpec::sec52_base, positive,
                         "must be positive"));
        t.push_back(real("metric.sec52_coef", &JobConfig::metric, &MetricSpec::sec52_coef,
                         [](double x) { return x >= 0.0 && std::isfinite(x); }, "must be non-negative"));
        t.push_back(real("metric.sec52_power", &JobConfig::metric, &MetricSpec::sec52_power,
                         [](double x) { return x >= 1.0 && std::isfinite(x); }, "must be at least 1"));

        t.push_back(integer("grid.n", &JobConfig::grid, &GridSpec::n, [](int n) { return n >= 64; },
                            "must be at least 64"));
        t.push_back(real("grid.gamma", &JobConfig::grid, &GridSpec::gamma, [](double g) { return g >= 1.0; },
                         "must be at least 1"));

        t.push_back(real("solver.step_tol", &JobConfig::solver, &SolverSpec::step_tol, positive, "must be positive"));
        t.push_back(real("solver.residual_tol", &JobConfig::solver, &SolverSpec::residual_tol, positive,
                         "must be positive"));
        t.push_back(integer("solver.max_iterations", &JobConfig::solver, &SolverSpec::max_iterations,
                            [](int n) { return n >= 1; }, "must be at least 1"));
        Field tip;
        tip.key = "solver.tip";
        tip.set = [](JobConfig& c, std::string_view v, std::size_t line) {
            c.solver.tip = to_choice("solver.tip", v, line, {"natural", "pinned"});
        };
        tip.get = [](const JobConfig& c) { return std::optional<std::string>(c.solver.tip); };
        t.push_back(tip);
        t.push_back(real("solver.ladder_rate", &JobConfig::solver, &SolverSpec::ladder_rate,
                         [](double r) { return r > 0.0 && r < 1.0; }, "must lie in (0, 1)"));
        t.push_back(boolean("solver.tighten", &JobConfig::solver, &SolverSpec::tighten));

        t.push_back(real("functional.t_min", &JobConfig::functional, &FunctionalSpec::t_min,
                         [](double x) { return std::isfinite(x); }, "must be finite"));
        t.push_back(real("functional.t_max", &JobConfig::functional, &FunctionalSpec::t_max,
                         [](double x) { return std::isfinite(x); }, "must be finite"));
        t.push_back(integer("functional.t_count", &JobConfig::functional, &FunctionalSpec::t_count,
                            [](int n) { return n >= 1; }, "must be at least 1"));

        Field command;
        command.key = "run.command";
        command.set = [](JobConfig& c, std::string_view v, std::size_t line) {
            if (std::find(std::begin(kCommands), std::end(kCommands), v) == std::end(kCommands)) {
                throw ConfigError(line, fmt::format("run.command '{}' is not a known command", v));
            }
            c.command = std::string(v);
        };
        command.get = [](const JobConfig& c) { return std::optional<std::string>(c.command); };
        t.push_back(command);

        Field dir;
        dir.key = "output.dir";
        dir.set = [](JobConfig& c, std::string_view v, std::size_t line) {
            require(!v.empty(), line, "output.dir must not be empty");
            c.output.dir = std::string(v);
        };
        dir.get = [](const JobConfig& c) { return std::optional<std::string>(c.output.dir); };
        t.push_back(dir);
        t.push_back(boolean("output.svg", &JobConfig::output, &OutputSpec::svg));
        return t;
    }();
    return table;
}

} // namespace

std::vector<std::string> config_keys() {
    std::vector<std::string> keys;
    for (const Field& f : fields()) keys.push_back(f.key);
    return keys;
}

JobConfig parse_config(std::string_view text, std::optional<std::string> command) {
    JobConfig config;
    std::map<std::string, std::size_t> seen;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto end = text.find('\n', pos);
        std::string_view line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
        pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(line_no, fmt::format("expected 'key = value', got '{}'", line));
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        const auto field = std::find_if(fields().begin(), fields().end(), [&](const Field& f) { return f.key == key; });
        if (field == fields().end()) throw ConfigError(line_no, fmt::format("unknown key '{}'", key));
        if (const auto dup = seen.find(key); dup != seen.end()) {
            throw ConfigError(line_no, fmt::format("duplicate key '{}' (first set on line {})", key, dup->second));
        }
        seen.emplace(key, line_no);
        field->set(config, value, line_no);
    }
    const std::size_t eof = line_no + 1;

    if (command) {
        if (std::find(std::begin(kCommands), std::end(kCommands), *command) == std::end(kCommands)) {
            throw ConfigError(0, fmt::format("'{}' is not a known command", *command));
        }
        config.command = *command;
    }
    if (!seen.contains("metric.warping") && config.command != "examples") {
        throw ConfigError(eof, "missing required key 'metric.warping'");
    }
    if (config.command.empty()) throw ConfigError(eof, "missing required key 'run.command'");

    const auto line_of = [&](const char* key) { return seen.contains(key) ? seen.at(key) : eof; };
    if (config.metric.link == "axisymmetric" && config.metric.m != 2) {
        throw ConfigError(line_of("metric.link"), "the axisymmetric link is two-dimensional: metric.m must be 2");
    }
    if (config.metric.link != "constant") {
        if (config.metric.link_curvature) {
            throw ConfigError(line_of("metric.link_curvature"), "metric.link_curvature needs metric.link = constant");
        }
        if (config.metric.link_volume) {
            throw ConfigError(line_of("metric.link_volume"), "metric.link_volume needs metric.link = constant");
        }
    }
    if (config.functional.t_min > config.functional.t_max) {
        throw ConfigError(line_of("functional.t_max"), "functional.t_max must not be below functional.t_min");
    }
    return config;
}

std::string serialize_config(const JobConfig& config) {
    std::string out;
    for (const Field& f : fields()) {
        if (const auto value = f.get(config)) out += fmt::format("{} = {}\n", f.key, *value);
    }
    return out;
}

} // namespace conic::cli
