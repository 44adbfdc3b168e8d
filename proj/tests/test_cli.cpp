// End-to-end tests of the command line tool: exit codes, output files,
// seed handling and worker-count independence of every written byte.

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
  if (const char* override_path = std::getenv("MCSSA_CLI")) return override_path;
  return MCSSA_CLI_PATH;
}

int run_cli(const std::string& args, const fs::path& log) {
  const std::string command =
      "\"" + cli_path() + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int status = std::system(command.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

fs::path fresh_dir(const std::string& tag) {
  static int counter = 0;
  const fs::path dir = fs::temp_directory_path() /
                       ("mcssa_cli_" + tag + "_" + std::to_string(getpid()) +
                        "_" + std::to_string(counter++));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("usage errors exit with code 2") {
  const fs::path dir = fresh_dir("usage");
  CHECK(run_cli("", dir / "log.txt") == 2);
  CHECK(run_cli("detect --no-such-flag", dir / "log.txt") == 2);
  CHECK(run_cli("detect --simulate --input f.txt", dir / "log.txt") == 2);
  CHECK(run_cli("detect --input /no/such/file --model estimate",
                dir / "log.txt") == 2);
  fs::remove_all(dir);
}

TEST_CASE("runtime failures exit with code 1") {
  const fs::path dir = fresh_dir("runtime");
  // Sine frequencies for L=10 live on k/21; none fall in (0.49, 0.499).
  CHECK(run_cli("detect --simulate --n 200 --basis sin -L 10"
                " --range 0.49,0.499 --out \"" +
                    (dir / "o").string() + "\"",
                dir / "log.txt") == 1);
  const std::string log = slurp(dir / "log.txt");
  CHECK(log.find("frequency range") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("malformed series files exit with code 2 and name the line") {
  const fs::path dir = fresh_dir("parse");
  {
    std::ofstream series(dir / "bad.txt");
    series << "1.0\n2.0\nnot-a-number\n";
  }
  CHECK(run_cli("detect --input \"" + (dir / "bad.txt").string() +
                    "\" --model estimate",
                dir / "log.txt") == 2);
  CHECK(slurp(dir / "log.txt").find("line 3") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("detect writes report, spectrum and manifest") {
  const fs::path dir = fresh_dir("detect");
  const std::string flags =
      "detect --simulate --n 300 --phi 0.4 --amplitude 0.5 --period 5.5"
      " -L 40 -G 200 --alpha 0.1 --basis ev --seed 20260814";
  CHECK(run_cli(flags + " --out \"" + (dir / "run").string() + "\"",
                dir / "log.txt") == 0);

  const std::string report = slurp(dir / "run" / "report.txt");
  CHECK(report.find("reject: true") == 0);
  CHECK(report.find("seed: 20260814") != std::string::npos);
  CHECK(report.find("alpha: 0.1\n") != std::string::npos);

  const std::string spectrum = slurp(dir / "run" / "spectrum.csv");
  CHECK(spectrum.find("frequency,observed,lower,upper,included,significant,"
                      "density\n") == 0);

  const auto manifest =
      nlohmann::json::parse(slurp(dir / "run" / "manifest.json"));
  CHECK(manifest.at("command") == "detect");
  CHECK(manifest.at("seed") == 20260814);
  CHECK(manifest.at("density_overlay_scale") == 300);
  CHECK(manifest.at("result").at("reject") == true);
  fs::remove_all(dir);
}

TEST_CASE("demo configuration detects the planted sinusoid") {
  const fs::path dir = fresh_dir("demo");
  CHECK(run_cli("detect --simulate --n 1000 --phi 0.7 --delta 1"
                " --amplitude 0.5 --period 5.5 -L 40 -G 1000"
                " --confidence 0.8 --basis ev --seed 5 --out \"" +
                    (dir / "run").string() + "\"",
                dir / "log.txt") == 0);
  const std::string report = slurp(dir / "run" / "report.txt");
  CHECK(report.find("reject: true") == 0);
  const auto pos = report.find("freq_max: ");
  REQUIRE(pos != std::string::npos);
  CHECK(std::abs(std::stod(report.substr(pos + 10)) - 1.0 / 5.5) < 0.02);
  fs::remove_all(dir);
}

TEST_CASE("detect reads a series file and estimates the null model") {
  const fs::path dir = fresh_dir("input");
  {
    const fs::path generated = dir / "gen";
    CHECK(run_cli("detect --simulate --n 250 --phi 0.5 --amplitude 1.0"
                  " --period 8 -L 20 -G 100 --seed 5 --out \"" +
                      generated.string() + "\"",
                  dir / "log.txt") == 0);
  }
  {
    std::ofstream series(dir / "series.txt");
    series << "# synthetic check\n";
    for (int i = 1; i <= 250; ++i)
      series << (std::sin(2.0 * 3.14159265358979 * i / 8.0) +
                 0.01 * ((i * 37) % 19 - 9))
             << "\n";
  }
  CHECK(run_cli("detect --input \"" + (dir / "series.txt").string() +
                    "\" --model estimate -L 25 -G 150 --alpha 0.1 --out \"" +
                    (dir / "run").string() + "\"",
                dir / "log.txt") == 0);
  const std::string report = slurp(dir / "run" / "report.txt");
  CHECK(report.find("reject: true") == 0);
  // The detected frequency sits near 1/8.
  const auto pos = report.find("freq_max: ");
  REQUIRE(pos != std::string::npos);
  const double freq = std::stod(report.substr(pos + 10));
  CHECK(freq == doctest::Approx(0.125).epsilon(0.15));
  fs::remove_all(dir);
}

TEST_CASE("seed comes from MCSSA_SEED unless --seed is given") {
  const fs::path dir = fresh_dir("envseed");
  const std::string base =
      " detect --simulate --n 150 --phi 0.3 -L 15 -G 60 --out ";
  {
    const std::string command = "MCSSA_SEED=123 \"" + cli_path() + "\"" + base +
                                "\"" + (dir / "env").string() + "\" > \"" +
                                (dir / "log.txt").string() + "\" 2>&1";
    REQUIRE(std::system(command.c_str()) == 0);
  }
  CHECK(slurp(dir / "env" / "report.txt").find("seed: 123") !=
        std::string::npos);
  {
    const std::string command = "MCSSA_SEED=123 \"" + cli_path() + "\"" + base +
                                "\"" + (dir / "flag").string() +
                                "\" --seed 999 > \"" +
                                (dir / "log.txt").string() + "\" 2>&1";
    REQUIRE(std::system(command.c_str()) == 0);
  }
  CHECK(slurp(dir / "flag" / "report.txt").find("seed: 999") !=
        std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("outputs do not depend on the worker count") {
  const fs::path dir = fresh_dir("workers");
  const std::string detect =
      "detect --simulate --n 300 --phi 0.4 --amplitude 0.5 --period 5.5"
      " -L 30 -G 150 --seed 11 --workers ";
  CHECK(run_cli(detect + "1 --out \"" + (dir / "d1").string() + "\"",
                dir / "log.txt") == 0);
  CHECK(run_cli(detect + "3 --out \"" + (dir / "d3").string() + "\"",
                dir / "log.txt") == 0);
  CHECK(slurp(dir / "d1" / "report.txt") == slurp(dir / "d3" / "report.txt"));
  CHECK(slurp(dir / "d1" / "spectrum.csv") ==
        slurp(dir / "d3" / "spectrum.csv"));

  const std::string calibrate =
      "calibrate --n 150 --phi 0.3 -L 15 -G 60 -M 30 --seed 11 --workers ";
  CHECK(run_cli(calibrate + "1 --out \"" + (dir / "c1").string() + "\"",
                dir / "log.txt") == 0);
  CHECK(run_cli(calibrate + "3 --out \"" + (dir / "c3").string() + "\"",
                dir / "log.txt") == 0);
  CHECK(slurp(dir / "c1" / "table.csv") == slurp(dir / "c3" / "table.csv"));
  fs::remove_all(dir);
}

TEST_CASE("rerun reproduces a recorded run byte for byte") {
  const fs::path dir = fresh_dir("rerun");
  CHECK(run_cli("detect --simulate --n 250 --phi 0.4 --amplitude 0.4"
                " --period 6 -L 25 -G 120 --seed 31 --out \"" +
                    (dir / "first").string() + "\"",
                dir / "log.txt") == 0);
  CHECK(run_cli("rerun --from \"" + (dir / "first" / "manifest.json").string() +
                    "\" --out \"" + (dir / "second").string() + "\"",
                dir / "log.txt") == 0);
  CHECK(slurp(dir / "first" / "report.txt") ==
        slurp(dir / "second" / "report.txt"));
  CHECK(slurp(dir / "first" / "spectrum.csv") ==
        slurp(dir / "second" / "spectrum.csv"));

  auto first = nlohmann::json::parse(slurp(dir / "first" / "manifest.json"));
  auto second = nlohmann::json::parse(slurp(dir / "second" / "manifest.json"));
  first.erase("timings");
  second.erase("timings");
  CHECK(first == second);

  // The same manifest drives the table commands as well.
  CHECK(run_cli("calibrate --n 150 --phi 0.3 -L 15 -G 60 -M 25 --seed 3"
                " --out \"" +
                    (dir / "cal").string() + "\"",
                dir / "log.txt") == 0);
  CHECK(run_cli("rerun --from \"" + (dir / "cal" / "manifest.json").string() +
                    "\" --out \"" + (dir / "cal2").string() + "\"",
                dir / "log.txt") == 0);
  CHECK(slurp(dir / "cal" / "table.csv") == slurp(dir / "cal2" / "table.csv"));
  fs::remove_all(dir);
}

TEST_CASE("confidence flag mirrors alpha and excludes it") {
  const fs::path dir = fresh_dir("confidence");
  const std::string base =
      "detect --simulate --n 150 --phi 0.3 -L 15 -G 60 --seed 4 --out ";
  CHECK(run_cli(base + "\"" + (dir / "a").string() + "\" --alpha 0.1",
                dir / "log.txt") == 0);
  CHECK(run_cli(base + "\"" + (dir / "c").string() + "\" --confidence 0.9",
                dir / "log.txt") == 0);
  CHECK(slurp(dir / "a" / "report.txt") == slurp(dir / "c" / "report.txt"));
  CHECK(run_cli(base + "\"" + (dir / "both").string() +
                    "\" --alpha 0.1 --confidence 0.9",
                dir / "log.txt") == 2);
  fs::remove_all(dir);
}

TEST_CASE("single-replicate calibration produces one wide row") {
  const fs::path dir = fresh_dir("single");
  CHECK(run_cli("calibrate --n 150 --phi 0.3 -L 15 -G 60 -M 1 --seed 2"
                " --out \"" +
                    (dir / "run").string() + "\"",
                dir / "log.txt") == 0);
  const std::string table = slurp(dir / "run" / "table.csv");
  CHECK(table.find("label,estimate,ci025,ci975\n") == 0);
  CHECK(std::count(table.begin(), table.end(), '\n') == 2);
  fs::remove_all(dir);
}

TEST_CASE("roc and adjust-alpha write their tables") {
  const fs::path dir = fresh_dir("tables");
  CHECK(run_cli("roc --n 150 --phi 0.3 -L 15 -G 60 -M 25 --amplitude 0.6"
                " --period 5.5 --levels 0.1,0.3 --seed 9 --out \"" +
                    (dir / "roc").string() + "\"",
                dir / "log.txt") == 0);
  const std::string roc = slurp(dir / "roc" / "roc.csv");
  CHECK(roc.find("alpha,fpr,tpr\n") == 0);
  CHECK(std::count(roc.begin(), roc.end(), '\n') == 3);

  CHECK(run_cli("adjust-alpha --n 150 --phi 0.3 -L 15 -G 80 -M 40"
                " --target 0.2 --search-lo 0.02 --search-hi 0.9 --seed 7"
                " --out \"" +
                    (dir / "adj").string() + "\"",
                dir / "log.txt") == 0);
  CHECK(slurp(dir / "adj" / "adjustment.csv").find("target,adjusted\n") == 0);
  CHECK(slurp(dir / "adj" / "trace.csv").find("label,estimate,ci025,ci975\n") ==
        0);
  fs::remove_all(dir);
}
