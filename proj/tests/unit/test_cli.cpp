#include "conic/cli/commands.hpp"
#include "conic/cli/config.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("conic_cli_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

conic::cli::JobConfig job(const std::string& warping, const std::string& command, const fs::path& dir, int n = 256) {
    auto c = conic::cli::parse_config("metric.warping = " + warping + "\nrun.command = " + command + "\n");
    c.output.dir = dir.string();
    c.grid.n = n;
    return c;
}

json read_json(const fs::path& path) {
    std::ifstream in(path);
    return json::parse(in);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

int shell(const std::string& command) {
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("examples lists the catalog") {
    std::ostringstream out;
    CHECK(conic::cli::run(job("flat-cone", "examples", scratch("examples")), out) == 0);
    std::size_t lines = 0;
    for (char ch : out.str()) lines += ch == '\n';
    CHECK(lines >= 5);
    CHECK(out.str().find("trace-violator") != std::string::npos);
}

TEST_CASE("curvature writes a CSV") {
    const auto dir = scratch("curvature");
    std::ostringstream out;
    CHECK(conic::cli::run(job("negcurv", "curvature", dir), out) == 0);
    const auto text = slurp(dir / "curvature.csv");
    CHECK(text.rfind("x,S,Sxx2\n", 0) == 0);
    std::size_t lines = 0;
    for (char ch : text) lines += ch == '\n';
    CHECK(lines == 257);
}

TEST_CASE("check: verdicts and exit codes") {
    const auto dir = scratch("check");
    std::ostringstream out;
    CHECK(conic::cli::run(job("negcurv", "check", dir), out) == 0);
    CHECK(read_json(dir / "obstructions.json")["verdict"] == "DeformableNormalized");
    CHECK(conic::cli::run(job("trace-violator", "check", dir), out) == 2);
    const auto j = read_json(dir / "obstructions.json");
    CHECK(j["verdict"] == "Obstructed");
    CHECK(j["trace_condition"] == false);
}

TEST_CASE("barriers: report and profiles") {
    const auto dir = scratch("barriers");
    std::ostringstream out;
    CHECK(conic::cli::run(job("negcurv", "barriers", dir), out) == 0);
    const auto j = read_json(dir / "barriers.json");
    CHECK(j["constants"]["all_pass"] == true);
    CHECK(j["margins"]["ok"] == true);
    CHECK(j["tightened_margins"]["ok"] == true);
    CHECK(slurp(dir / "barriers.csv").rfind("x,phi,psi,Pphi,Ppsi\n", 0) == 0);
    CHECK(conic::cli::run(job("rigid-scaled", "barriers", dir), out) == 2);
}

TEST_CASE("solve: report, profile and plot") {
    const auto dir = scratch("solve");
    std::ostringstream out;
    CHECK(conic::cli::run(job("negcurv", "solve", dir, 512), out) == 0);
    const auto j = read_json(dir / "solve.json");
    CHECK(j["converged"] == true);
    CHECK(j["residual_inf_norm"].get<double>() <= 1e-8);
    CHECK(j["monotone_certificate"] == true);
    CHECK(fs::exists(dir / "profile.csv"));
    CHECK(slurp(dir / "profile.svg").find("<svg") != std::string::npos);
    CHECK(conic::cli::run(job("trace-violator", "solve", dir), out) == 2);
    CHECK(conic::cli::run(job("flat-cone", "solve", dir), out) == 2);
}

TEST_CASE("yamabe: estimate and closed form") {
    const auto dir = scratch("yamabe");
    std::ostringstream out;
    CHECK(conic::cli::run(job("negcurv", "yamabe", dir), out) == 0);
    const auto j = read_json(dir / "yamabe.json");
    CHECK(j["solution"]["relative_difference"].get<double>() <= 1e-6);
    CHECK(j["estimate"]["finite"] == true);
    CHECK(j["estimate_with_solution"]["inf_value"].get<double>() <= j["estimate"]["inf_value"].get<double>());
}

TEST_CASE("internal errors exit 1") {
    auto c = job("negcurv", "check", scratch("internal"));
    c.output.dir = "/proc/conic-cannot-create";
    std::ostringstream out;
    CHECK(conic::cli::run(c, out) == 1);
}

TEST_CASE("the executable") {
    const auto dir = scratch("binary");
    const std::string exe = CONIC_EXECUTABLE;
    {
        std::ofstream cfg(dir / "job.conf");
        cfg << "# negcurv at a coarse grid\nmetric.warping = negcurv\ngrid.n = 128\n";
    }
    const std::string cfg = (dir / "job.conf").string();
    const std::string out = (dir / "out").string();
    CHECK(shell(exe + " solve --config " + cfg + " --out " + out + " --quiet") == 0);
    CHECK(read_json(dir / "out" / "solve.json")["converged"] == true);
    CHECK(shell(exe + " check --config " + cfg + " --out " + out + " --grid-n 64 --quiet") == 0);
    CHECK(shell(exe + " examples > /dev/null") == 0);
    CHECK(shell(exe + " fly --config " + cfg + " 2> /dev/null") == 1);
    CHECK(shell(exe + " solve 2> /dev/null") == 1);
    CHECK(shell(exe + " solve --config " + cfg + " --grid-n 8 2> /dev/null") == 1);
    {
        std::ofstream bad(dir / "bad.conf");
        bad << "metric.warping = negcurv\nmetric.m = 1\n";
    }
    CHECK(shell(exe + " check --config " + (dir / "bad.conf").string() + " 2> " + (dir / "err.txt").string()) == 1);
    CHECK(slurp(dir / "err.txt").find("line 2") != std::string::npos);
    {
        std::ofstream tv(dir / "tv.conf");
        tv << "metric.warping = trace-violator\n";
    }
    CHECK(shell("CONIC_LOG=error " + exe + " check --config " + (dir / "tv.conf").string() + " --out " + out) == 2);
    CHECK(read_json(dir / "out" / "obstructions.json")["verdict"] == "Obstructed");
}

}
