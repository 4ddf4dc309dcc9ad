#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct CommandResult {
  int exit_code = -1;
  std::string output;
};

// Runs the CLI binary with stdout+stderr captured to a file.
CommandResult run_cli(const std::string& args, const fs::path& dir) {
  const fs::path log = dir / "cli_output.log";
  const std::string command = std::string(COLEARN_CLI_PATH) + " " + args +
                              " > " + log.string() + " 2>&1";
  const int status = std::system(command.c_str());
  CommandResult result;
  result.exit_code = WEXITSTATUS(status);
  std::ifstream file(log);
  std::stringstream buffer;
  buffer << file.rdbuf();
  result.output = buffer.str();
  return result;
}

fs::path fresh_dir(const char* name) {
  const fs::path dir = fs::temp_directory_path() / "colearn_cli" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream file(path);
  std::stringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("run baseline writes the three artifacts and a verdict") {
  const fs::path dir = fresh_dir("run");
  const CommandResult result =
      run_cli("run baseline --out " + dir.string(), dir);
  CHECK(result.exit_code == 0);
  CHECK(fs::exists(dir / "baseline_trajectory.csv"));
  CHECK(fs::exists(dir / "baseline_chart.svg"));
  CHECK(fs::exists(dir / "baseline_summary.txt"));

  const std::string summary = slurp(dir / "baseline_summary.txt");
  CHECK(summary.find("verdict: delay") != std::string::npos);
  CHECK(summary.find("positive_fraction: 0.495050") != std::string::npos);
}

TEST_CASE("run is deterministic across invocations") {
  const fs::path dir1 = fresh_dir("det1");
  const fs::path dir2 = fresh_dir("det2");
  CHECK(run_cli("run baseline --out " + dir1.string(), dir1).exit_code == 0);
  CHECK(run_cli("run baseline --out " + dir2.string(), dir2).exit_code == 0);
  CHECK(slurp(dir1 / "baseline_trajectory.csv") ==
        slurp(dir2 / "baseline_trajectory.csv"));
  CHECK(slurp(dir1 / "baseline_chart.svg") ==
        slurp(dir2 / "baseline_chart.svg"));
}

TEST_CASE("a missing scenario file exits with the usage code") {
  const fs::path dir = fresh_dir("missing");
  const CommandResult result = run_cli("run no_such_file.scn", dir);
  CHECK(result.exit_code == 2);
}

TEST_CASE("an invalid override exits with the usage code") {
  const fs::path dir = fresh_dir("badset");
  CHECK(run_cli("run baseline --set rates.k3=-1 --out " + dir.string(), dir)
            .exit_code == 2);
  CHECK(run_cli("run baseline --set rates.nope=1 --out " + dir.string(), dir)
            .exit_code == 2);
}

TEST_CASE("dropping the volatility brake raises peak authority") {
  const fs::path dir = fresh_dir("override");
  const CommandResult result = run_cli(
      "run baseline --set rates.k3=0.0 --out " + dir.string(), dir);
  CHECK(result.exit_code == 0);
  const std::string summary = slurp(dir / "baseline_summary.txt");
  // 0.4849 vs 0.3534 with the brake in place.
  CHECK(summary.find("u_peak: 0.4848") != std::string::npos);
}

TEST_CASE("run accepts a scenario file") {
  const fs::path dir = fresh_dir("file");
  const fs::path scn = dir / "case.scn";
  {
    std::ofstream out(scn);
    out << "label = filecase\n[rates]\nk3 = 0.2\n";
  }
  const CommandResult result =
      run_cli("run " + scn.string() + " --out " + dir.string(), dir);
  CHECK(result.exit_code == 0);
  CHECK(fs::exists(dir / "filecase_summary.txt"));
}

TEST_CASE("sweep writes a table and respects the value order") {
  const fs::path dir = fresh_dir("sweep");
  const CommandResult result = run_cli(
      "sweep baseline --param schedules.explanation_quality.base "
      "--values 0.5,0.75,1.0 --out " +
          dir.string(),
      dir);
  CHECK(result.exit_code == 0);
  const std::string csv =
      slurp(dir / "sweep_schedules_explanation_quality_base.csv");
  REQUIRE_FALSE(csv.empty());
  CHECK(csv.find("value,positive_fraction,peak_c,u_peak,verdict") == 0);
  CHECK(csv.find("0.5,") != std::string::npos);
  CHECK(csv.find("\n1,") != std::string::npos);
}

TEST_CASE("sweep rejects an unknown parameter path") {
  const fs::path dir = fresh_dir("badsweep");
  const CommandResult result = run_cli(
      "sweep baseline --param rates.unknown --values 0.1 --out " +
          dir.string(),
      dir);
  CHECK(result.exit_code == 2);
}

TEST_CASE("calibrate writes the best assignment and the grid") {
  const fs::path dir = fresh_dir("calibrate");
  const CommandResult result = run_cli(
      "calibrate baseline --axis proportionality.c0=0.2:0.35:4 --out " +
          dir.string(),
      dir);
  CHECK(result.exit_code == 0);
  CHECK(fs::exists(dir / "calibration_best.txt"));
  const std::string grid = slurp(dir / "calibration_grid.csv");
  CHECK(grid.find("proportionality.c0,positive_fraction,abs_error") == 0);
  // Header plus the four grid rows.
  CHECK(std::count(grid.begin(), grid.end(), '\n') == 5);
}

TEST_CASE("calibrate rejects degenerate axes") {
  const fs::path dir = fresh_dir("badcal");
  CHECK(run_cli("calibrate baseline --axis proportionality.c0=0.3:0.2:4",
                dir)
            .exit_code == 2);
  CHECK(run_cli("calibrate baseline --axis proportionality.c0=0.2:0.3:1",
                dir)
            .exit_code == 2);
  CHECK(run_cli("calibrate baseline --axis proportionality.c0=oops", dir)
            .exit_code == 2);
}

TEST_CASE("check passes on the default build") {
  const fs::path dir = fresh_dir("check");
  const CommandResult result = run_cli("check", dir);
  CHECK(result.exit_code == 0);
  for (const char* loop : {"R1", "B1", "B2", "R2", "B3"}) {
    CHECK(result.output.find(loop) != std::string::npos);
  }
  CHECK(result.output.find("FAIL") == std::string::npos);
}

TEST_CASE("check surfaces an injected governance defect") {
  const fs::path dir = fresh_dir("checkbad");
  const CommandResult result =
      run_cli("check --set rates.delta2=-0.1", dir);
  CHECK(result.exit_code == 1);
  CHECK(result.output.find("FAIL") != std::string::npos);
  CHECK(result.output.find("R1") != std::string::npos);
}

TEST_CASE("check --json emits machine-readable diagnostics") {
  const fs::path dir = fresh_dir("checkjson");
  const CommandResult result = run_cli("check --json", dir);
  CHECK(result.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(result.output);
  CHECK(j["all_pass"].get<bool>());
  for (const char* loop : {"R1", "B1", "B2", "R2", "B3", "params"}) {
    CHECK(j.contains(loop));
    CHECK(j[loop]["pass"].get<bool>());
  }
}

TEST_CASE("unknown subcommands exit with the usage code") {
  const fs::path dir = fresh_dir("usage");
  CHECK(run_cli("frobnicate", dir).exit_code == 2);
  CHECK(run_cli("", dir).exit_code == 2);
}

TEST_SUITE_END();
