#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "svmc/cli.hpp"
#include "svmc/errors.hpp"

using namespace svmc;
namespace fs = std::filesystem;

namespace {

/// Runs the CLI with stdout/stderr captured so test logs stay readable.
int run_cli(const std::vector<std::string>& args, std::string* captured = nullptr) {
  std::vector<const char*> argv = {"greeks"};
  for (const auto& a : args) argv.push_back(a.c_str());

  std::ostringstream sink;
  std::streambuf* old_out = std::cout.rdbuf(sink.rdbuf());
  std::streambuf* old_err = std::cerr.rdbuf(sink.rdbuf());
  const int code = cli_run(static_cast<int>(argv.size()), argv.data());
  std::cout.rdbuf(old_out);
  std::cerr.rdbuf(old_err);
  if (captured) *captured = sink.str();
  return code;
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / "svmc_cli_test") {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string write_config(const TempDir& dir, const std::string& name,
                         const std::string& body) {
  const fs::path p = dir.path / name;
  std::ofstream(p) << body;
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream body;
  body << in.rdbuf();
  return body.str();
}

constexpr const char* kSmallJob =
    "model = black_scholes\n"
    "n = 16\n"
    "n_paths = 400\n"
    "seed = 777\n"
    "greeks = price, delta\n";

}  // namespace

TEST_CASE("run writes both reports and exits cleanly") {
  TempDir dir;
  const std::string cfg = write_config(dir, "job.cfg", kSmallJob);
  const std::string out = (dir.path / "reports").string();

  std::string log;
  const int code = run_cli({"run", cfg, "--out", out}, &log);
  CHECK(code == exit_code::ok);
  CHECK(fs::exists(fs::path(out) / "report.json"));
  CHECK(fs::exists(fs::path(out) / "report.csv"));
  CHECK(log.find("delta[corrected]") != std::string::npos);

  const std::string csv = slurp(fs::path(out) / "report.csv");
  CHECK(csv.rfind("greek,variant,value,std_error,n_paths,n_rejected\n", 0) == 0);
}

TEST_CASE("format flag narrows the outputs") {
  TempDir dir;
  const std::string cfg = write_config(dir, "job.cfg", kSmallJob);
  const std::string out = (dir.path / "csv_only").string();

  CHECK(run_cli({"run", cfg, "--format", "csv", "--out", out}) == exit_code::ok);
  CHECK(fs::exists(fs::path(out) / "report.csv"));
  CHECK_FALSE(fs::exists(fs::path(out) / "report.json"));
}

TEST_CASE("seed environment override reproduces the config seed") {
  TempDir dir;
  const std::string with_seed = write_config(dir, "a.cfg", kSmallJob);
  const std::string other_seed = write_config(
      dir, "b.cfg",
      "model = black_scholes\nn = 16\nn_paths = 400\nseed = 1\ngreeks = price, delta\n");
  const std::string out_a = (dir.path / "a").string();
  const std::string out_b = (dir.path / "b").string();

  CHECK(run_cli({"run", with_seed, "--format", "csv", "--out", out_a}) == exit_code::ok);

  setenv("GREEKS_SEED", "777", 1);
  const int code = run_cli({"run", other_seed, "--format", "csv", "--out", out_b});
  unsetenv("GREEKS_SEED");
  CHECK(code == exit_code::ok);

  CHECK(slurp(fs::path(out_a) / "report.csv") == slurp(fs::path(out_b) / "report.csv"));
}

TEST_CASE("error classes map to distinct exit codes") {
  TempDir dir;

  // Missing config file: io.
  CHECK(run_cli({"run", (dir.path / "absent.cfg").string()}) == exit_code::io);

  // Unknown key: config.
  const std::string bad_key =
      write_config(dir, "bad_key.cfg", "model = black_scholes\nvol = 0.2\n");
  CHECK(run_cli({"run", bad_key}) == exit_code::config);

  // Absurd rejection threshold: numeric.
  const std::string rejecting = write_config(
      dir, "reject.cfg",
      "model = black_scholes\nn = 16\nn_paths = 400\ngreeks = delta\neps_den = 1e9\n"
      "out_json = r.json\nout_csv = r.csv\n");
  CHECK(run_cli({"run", rejecting, "--out", dir.path.string()}) == exit_code::numeric);

  // Invalid seed override: config.
  const std::string fine = write_config(dir, "fine.cfg", kSmallJob);
  setenv("GREEKS_SEED", "not_a_number", 1);
  const int code = run_cli({"run", fine, "--out", (dir.path / "x").string()});
  unsetenv("GREEKS_SEED");
  CHECK(code == exit_code::config);

  // Command line misuse: config.
  CHECK(run_cli({}) == exit_code::config);
  CHECK(run_cli({"run", fine, "--format", "xml"}) == exit_code::config);
}
