#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "chainform/run.hpp"
#include "chainform/trajectory.hpp"
#include "support.hpp"

using namespace chainform;
namespace fs = std::filesystem;

namespace {

int cli(const std::string& args) {
    const std::string cmd = std::string("\"") + CHAINFORM_CLI + "\" " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) : path(fs::temp_directory_path() / ("chainform_cli_" + tag)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("run writes the trajectory, metrics and svg frames") {
    TempDir dir("run");
    const auto scenario = testing::scenario_path("baseline");
    CHECK(cli("run --scenario \"" + scenario.string() + "\" --out \"" + dir.path.string() + "\" --svg") == 0);

    const auto run = run_scenario(load_scenario(scenario));
    CHECK(slurp(dir.path / "trajectory.csv") == trajectory_csv(run.frames));
    const auto metrics = nlohmann::json::parse(slurp(dir.path / "metrics.json"));
    CHECK(metrics["frames"] == run.frames.size());
    CHECK(fs::exists(dir.path / "final.svg"));
    CHECK(fs::exists(dir.path / "frames" / "frame_000000.svg"));
    CHECK(fs::exists(dir.path / "frames" / "frame_000051.svg"));
}

TEST_CASE("sweep writes one directory per value and a summary") {
    TempDir dir("sweep");
    const auto scenario = testing::scenario_path("theta-sweep");
    CHECK(cli("sweep --scenario \"" + scenario.string() + "\" --out \"" + dir.path.string() + "\"") == 0);
    const auto summary = nlohmann::json::parse(slurp(dir.path / "sweep.json"));
    CHECK(summary["ok"] == true);
    CHECK(summary["runs"].size() == 3);
    CHECK(fs::exists(dir.path / "theta_0.1" / "trajectory.csv"));

    CHECK(cli("sweep --scenario \"" + scenario.string() + "\" --param l --values 5,7 --out \"" + dir.path.string() +
              "\"") == 2);
}

TEST_CASE("input errors exit with 1") {
    TempDir dir("input");
    CHECK(cli("run --scenario \"" + (dir.path / "missing.json").string() + "\" --out \"" + dir.path.string() +
              "\"") == 1);

    auto text = slurp(testing::scenario_path("baseline"));
    text.replace(text.find("\"threshold\": 0.05"), 17, "\"threshold\": 0");
    std::ofstream(dir.path / "bad.json") << text;
    CHECK(cli("run --scenario \"" + (dir.path / "bad.json").string() + "\" --out \"" + dir.path.string() + "\"") ==
          1);

    CHECK(cli("run") == 1);
    CHECK(cli("frobnicate") == 1);
}

TEST_CASE("non-convergence exits with 2") {
    TempDir dir("stuck");
    auto sc = load_scenario(testing::scenario_path("baseline"));
    sc.solver.max_sweeps = 2;
    save_scenario(sc, dir.path / "stuck.json");
    CHECK(cli("run --scenario \"" + (dir.path / "stuck.json").string() + "\" --out \"" + dir.path.string() +
              "/out\"") == 2);
}
