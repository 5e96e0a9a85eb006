#pragma once

#include <string>
#include <vector>

#include "svmc/config.hpp"
#include "svmc/estimators.hpp"
#include "svmc/oracles.hpp"

namespace svmc {

inline constexpr const char* kArtifactVersion = "1.0.0";

/// Everything one job produced. Re-running the resolved config reproduces all
/// estimates bit-identically; wall_clock_seconds is the only field that
/// varies between identical runs.
struct RunManifest {
  RunConfig config;
  std::string artifact_version = kArtifactVersion;
  double wall_clock_seconds = 0.0;
  std::vector<GreekEstimate> estimates;
  std::vector<OracleReport> oracle_rows;
  bool oracles_pass = true;
};

/// Simulates once and evaluates every requested greek/variant on the shared
/// paths; runs the oracle suite when config.oracles is set.
RunManifest run_job(const RunConfig& config);

/// Formats a double with 17 significant digits (round-trip exact).
std::string fmt17(double value);

/// CSV body: fixed header "greek,variant,value,std_error,n_paths,n_rejected"
/// plus one row per estimate.
std::string manifest_to_csv(const RunManifest& manifest);

/// Single JSON document: config echo, estimate rows, oracle rows, wall clock.
std::string manifest_to_json(const RunManifest& manifest);

/// Writers; unwritable destination throws IoError.
void write_file(const std::string& path, const std::string& body);

}  // namespace svmc
