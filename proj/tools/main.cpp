#include "conic/cli/commands.hpp"
#include "conic/cli/config.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

spdlog::level::level_enum level_from_env() {
    const char* env = std::getenv("CONIC_LOG");
    const std::string value = env ? env : "info";
    if (value == "error") return spdlog::level::err;
    if (value == "debug") return spdlog::level::debug;
    if (value != "info") std::cerr << "CONIC_LOG must be error, info or debug; using info\n";
    return spdlog::level::info;
}

} // namespace

int main(int argc, char** argv) {
    spdlog::set_default_logger(spdlog::stderr_color_mt("conic"));
    spdlog::set_pattern("[%l] %v");
    spdlog::set_level(level_from_env());

    CLI::App app{"Conic metrics: curvature, obstructions and the negative Yamabe problem"};
    std::string command;
    std::string config_path;
    std::string out_dir;
    int grid_n = 0;
    bool quiet = false;
    app.add_option("command", command, "curvature | check | barriers | solve | yamabe | examples")
        ->required()
        ->check(CLI::IsMember({"curvature", "check", "barriers", "solve", "yamabe", "examples"}));
    app.add_option("--config", config_path, "job configuration file")->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output directory (overrides output.dir)");
    app.add_option("--grid-n", grid_n, "number of radial nodes (overrides grid.n)")->check(CLI::Range(64, 1 << 24));
    app.add_flag("--quiet", quiet, "only report errors");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }
    if (quiet) spdlog::set_level(spdlog::level::err);

    conic::cli::JobConfig config;
    try {
        if (config_path.empty()) {
            if (command != "examples") {
                spdlog::error("--config is required for '{}'", command);
                return conic::cli::kInternal;
            }
            config.command = command;
        } else {
            std::ifstream in(config_path);
            std::stringstream text;
            text << in.rdbuf();
            config = conic::cli::parse_config(text.str(), command);
        }
    } catch (const conic::cli::ConfigError& e) {
        spdlog::error("{}: {}", config_path, e.what());
        return conic::cli::kInternal;
    }
    if (!out_dir.empty()) config.output.dir = out_dir;
    if (grid_n > 0) config.grid.n = grid_n;
    spdlog::debug("effective configuration:\n{}", conic::cli::serialize_config(config));
    return conic::cli::run(config, std::cout);
}
