#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace svmc {

/// One reproducible job, parsed from flat key=value text. model_params holds
/// the fully resolved preset parameters (defaults merged with overrides) so
/// the canonical echo reproduces the run exactly.
struct RunConfig {
  std::string model;
  std::map<std::string, double> model_params;
  std::string payoff = "call";
  double strike = 100.0;
  double T = 1.0;
  std::size_t n = 64;
  std::size_t n_paths = 100000;
  std::uint64_t seed = 12345;
  std::size_t workers = 1;
  std::vector<std::string> greeks = {"price"};
  std::vector<std::string> variants = {"corrected"};
  std::string u = "constant";
  bool discounting = true;
  double eps_den = -1.0;  // negative: resolved to 1e-8 * |sigma(y0)| * T at run time
  bool oracles = false;
  std::string out_json = "report.json";
  std::string out_csv = "report.csv";

  bool operator==(const RunConfig&) const = default;
};

/// Parses flat key=value lines ('#' starts a comment, blank lines ignored).
/// Applies documented defaults, validates invariants (n >= 1, n_paths >= 100,
/// n <= 512 when gamma is requested, |rho| <= 1, ...) and rejects unknown or
/// duplicate keys; every error names the offending line and key.
RunConfig parse_config(const std::string& text);

/// Canonical echo: one key=value line per field, model parameters fully
/// resolved, parseable by parse_config back to an equal RunConfig.
std::string config_to_text(const RunConfig& config);

}  // namespace svmc
