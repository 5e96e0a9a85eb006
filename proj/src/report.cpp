#include "svmc/report.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "svmc/errors.hpp"
#include "svmc/path.hpp"
#include "svmc/rng.hpp"

namespace svmc {

std::string fmt17(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", static_cast<unsigned char>(c));
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string json_str(const std::string& s) { return "\"" + json_escape(s) + "\""; }

std::string json_list(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += json_str(items[i]);
  }
  return out + "]";
}

}  // namespace

RunManifest run_job(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();

  const ModelSpec model = make_preset(config.model, config.model_params);
  const TimeGrid grid{config.T, config.n};
  const Payoff payoff = make_payoff(parse_payoff_kind(config.payoff), config.strike);

  std::vector<Greek> greeks;
  for (const auto& g : config.greeks) greeks.push_back(parse_greek(g));
  std::vector<Variant> variants;
  for (const auto& v : config.variants) variants.push_back(parse_variant(v));

  EstimatorOptions options;
  options.discounting = config.discounting;
  options.eps_den = config.eps_den;
  options.workers = config.workers;

  RunManifest manifest;
  manifest.config = config;
  manifest.estimates = run_estimators(model, payoff, grid, config.n_paths, config.seed,
                                      parse_weight_kind(config.u), greeks, variants, options);

  if (config.oracles) {
    manifest.oracle_rows = duality_check(100000, config.seed);
    if (!model.state_dependent_beta()) {
      RngStream rng(config.seed, 0);
      const PathBundle path = simulate_path(model, grid, rng);
      for (auto& row : tangent_oracles(path, model, grid)) {
        manifest.oracle_rows.push_back(std::move(row));
      }
    }
    manifest.oracles_pass = true;
    for (const auto& row : manifest.oracle_rows) manifest.oracles_pass &= row.pass;
  }

  const auto stop = std::chrono::steady_clock::now();
  manifest.wall_clock_seconds = std::chrono::duration<double>(stop - start).count();
  return manifest;
}

std::string manifest_to_csv(const RunManifest& manifest) {
  std::ostringstream out;
  out << "greek,variant,value,std_error,n_paths,n_rejected\n";
  for (const auto& est : manifest.estimates) {
    out << greek_name(est.greek) << "," << variant_name(est.variant) << ","
        << fmt17(est.value) << "," << fmt17(est.std_error) << "," << est.n_paths << ","
        << est.n_rejected << "\n";
  }
  return out.str();
}

std::string manifest_to_json(const RunManifest& manifest) {
  const RunConfig& cfg = manifest.config;
  std::ostringstream out;
  out << "{\n";
  out << "  \"artifact_version\": " << json_str(manifest.artifact_version) << ",\n";
  out << "  \"config\": {\n";
  out << "    \"model\": " << json_str(cfg.model) << ",\n";
  out << "    \"model_params\": {";
  bool first = true;
  for (const auto& [key, value] : cfg.model_params) {
    if (!first) out << ", ";
    first = false;
    out << json_str(key) << ": " << fmt17(value);
  }
  out << "},\n";
  out << "    \"payoff\": " << json_str(cfg.payoff) << ",\n";
  out << "    \"strike\": " << fmt17(cfg.strike) << ",\n";
  out << "    \"T\": " << fmt17(cfg.T) << ",\n";
  out << "    \"n\": " << cfg.n << ",\n";
  out << "    \"n_paths\": " << cfg.n_paths << ",\n";
  out << "    \"seed\": " << cfg.seed << ",\n";
  out << "    \"workers\": " << cfg.workers << ",\n";
  out << "    \"greeks\": " << json_list(cfg.greeks) << ",\n";
  out << "    \"variants\": " << json_list(cfg.variants) << ",\n";
  out << "    \"u\": " << json_str(cfg.u) << ",\n";
  out << "    \"discounting\": " << (cfg.discounting ? "true" : "false") << ",\n";
  out << "    \"eps_den\": " << fmt17(cfg.eps_den) << ",\n";
  out << "    \"oracles\": " << (cfg.oracles ? "true" : "false") << ",\n";
  out << "    \"out_json\": " << json_str(cfg.out_json) << ",\n";
  out << "    \"out_csv\": " << json_str(cfg.out_csv) << "\n";
  out << "  },\n";
  out << "  \"estimates\": [\n";
  for (std::size_t i = 0; i < manifest.estimates.size(); ++i) {
    const auto& est = manifest.estimates[i];
    out << "    {\"greek\": " << json_str(greek_name(est.greek))
        << ", \"variant\": " << json_str(variant_name(est.variant))
        << ", \"value\": " << fmt17(est.value)
        << ", \"std_error\": " << fmt17(est.std_error) << ", \"n_paths\": " << est.n_paths
        << ", \"n_rejected\": " << est.n_rejected
        << ", \"discounting\": " << (est.discounting ? "true" : "false") << "}"
        << (i + 1 < manifest.estimates.size() ? "," : "") << "\n";
  }
  out << "  ],\n";
  out << "  \"oracles\": [\n";
  for (std::size_t i = 0; i < manifest.oracle_rows.size(); ++i) {
    const auto& row = manifest.oracle_rows[i];
    out << "    {\"quantity\": " << json_str(row.quantity)
        << ", \"oracle_value\": " << fmt17(row.oracle_value)
        << ", \"estimate\": " << fmt17(row.estimate)
        << ", \"std_error\": " << fmt17(row.std_error)
        << ", \"tolerance\": " << fmt17(row.tolerance)
        << ", \"pass\": " << (row.pass ? "true" : "false") << "}"
        << (i + 1 < manifest.oracle_rows.size() ? "," : "") << "\n";
  }
  out << "  ],\n";
  out << "  \"oracles_pass\": " << (manifest.oracles_pass ? "true" : "false") << ",\n";
  out << "  \"wall_clock_seconds\": " << fmt17(manifest.wall_clock_seconds) << "\n";
  out << "}\n";
  return out.str();
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << body;
  out.flush();
  if (!out) throw IoError("failed while writing '" + path + "'");
}

}  // namespace svmc
