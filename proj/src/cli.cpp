#include "svmc/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "svmc/config.hpp"
#include "svmc/errors.hpp"
#include "svmc/report.hpp"

namespace svmc {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream body;
  body << in.rdbuf();
  if (in.bad()) throw IoError("failed while reading '" + path + "'");
  return body.str();
}

std::uint64_t parse_env_seed(const std::string& value) {
  if (value.empty()) throw ConfigError("GREEKS_SEED: empty value");
  char* end = nullptr;
  const unsigned long long parsed = std::strtoull(value.c_str(), &end, 10);
  if (value[0] == '-' || end == value.c_str() || end != value.c_str() + value.size()) {
    throw ConfigError("GREEKS_SEED: expected a non-negative integer, got '" + value + "'");
  }
  return static_cast<std::uint64_t>(parsed);
}

std::string join_out(const std::string& dir, const std::string& file) {
  if (dir.empty()) return file;
  return (std::filesystem::path(dir) / file).string();
}

}  // namespace

int cli_run(int argc, const char* const* argv) {
  CLI::App app{"Monte Carlo option Greeks under stochastic volatility"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run one job described by a key=value config file");
  std::string config_path;
  run->add_option("config", config_path, "Path to the config file")->required();
  std::string format;
  run->add_option("--format", format, "Write only this report format (default: both)")
      ->check(CLI::IsMember({"json", "csv"}));
  std::string out_dir;
  run->add_option("--out", out_dir, "Directory for report files (created if missing)");
  std::string oracles_flag;
  run->add_option("--oracles", oracles_flag, "Override the config's oracles switch")
      ->check(CLI::IsMember({"on", "off"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code::config;
  }

  try {
    RunConfig config = parse_config(read_file(config_path));
    if (const char* env_seed = std::getenv("GREEKS_SEED")) {
      config.seed = parse_env_seed(env_seed);
    }
    if (!oracles_flag.empty()) config.oracles = oracles_flag == "on";

    const RunManifest manifest = run_job(config);

    if (!out_dir.empty()) {
      std::error_code ec;
      std::filesystem::create_directories(out_dir, ec);
      if (ec) throw IoError("cannot create output directory '" + out_dir + "': " + ec.message());
    }
    if (format.empty() || format == "json") {
      const std::string path = join_out(out_dir, config.out_json);
      write_file(path, manifest_to_json(manifest));
      std::cout << "wrote " << path << "\n";
    }
    if (format.empty() || format == "csv") {
      const std::string path = join_out(out_dir, config.out_csv);
      write_file(path, manifest_to_csv(manifest));
      std::cout << "wrote " << path << "\n";
    }

    for (const auto& est : manifest.estimates) {
      std::cout << greek_name(est.greek) << "[" << variant_name(est.variant)
                << "] = " << fmt17(est.value) << "  (std error " << fmt17(est.std_error)
                << ", " << est.n_paths << " paths, " << est.n_rejected << " rejected)\n";
    }
    if (config.oracles) {
      for (const auto& row : manifest.oracle_rows) {
        std::cout << "oracle " << row.quantity << ": " << (row.pass ? "PASS" : "FAIL")
                  << "\n";
      }
      if (!manifest.oracles_pass) {
        std::cerr << "error: oracle suite failed\n";
        return exit_code::oracle_gate;
      }
    }
    return exit_code::ok;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code::config;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code::numeric;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code::io;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace svmc
