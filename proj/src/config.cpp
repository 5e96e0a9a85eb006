#include "svmc/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <set>
#include <sstream>

#include "svmc/errors.hpp"
#include "svmc/estimators.hpp"
#include "svmc/model.hpp"
#include "svmc/payoff.hpp"

namespace svmc {

namespace {

const std::set<std::string> kCoreKeys = {
    "model",   "payoff",  "strike",   "T",           "n",       "n_paths",
    "seed",    "workers", "greeks",   "variants",    "u",       "discounting",
    "eps_den", "oracles", "out_json", "out_csv"};

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

struct Entry {
  std::size_t line = 0;
  std::string value;
};

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

double parse_double(const Entry& entry, const std::string& key) {
  const std::string v = entry.value;
  char* end = nullptr;
  const double parsed = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || end != v.c_str() + v.size()) {
    fail(entry.line, "key '" + key + "': expected a number, got '" + v + "'");
  }
  if (!std::isfinite(parsed)) fail(entry.line, "key '" + key + "': value must be finite");
  return parsed;
}

std::uint64_t parse_uint(const Entry& entry, const std::string& key) {
  const std::string v = entry.value;
  if (v.empty() || v[0] == '-' || v[0] == '+') {
    fail(entry.line, "key '" + key + "': expected a non-negative integer, got '" + v + "'");
  }
  char* end = nullptr;
  const unsigned long long parsed = std::strtoull(v.c_str(), &end, 10);
  if (end == v.c_str() || end != v.c_str() + v.size()) {
    fail(entry.line, "key '" + key + "': expected a non-negative integer, got '" + v + "'");
  }
  return static_cast<std::uint64_t>(parsed);
}

bool parse_switch(const Entry& entry, const std::string& key) {
  if (entry.value == "on" || entry.value == "true") return true;
  if (entry.value == "off" || entry.value == "false") return false;
  fail(entry.line, "key '" + key + "': expected on or off, got '" + entry.value + "'");
}

std::vector<std::string> split_list(const Entry& entry, const std::string& key) {
  std::vector<std::string> out;
  std::stringstream ss(entry.value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  if (out.empty()) fail(entry.line, "key '" + key + "': empty list");
  return out;
}

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  std::map<std::string, Entry> entries;
  std::stringstream stream(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(stream, raw)) {
    ++line_no;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected key=value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(line_no, "missing key before '='");
    if (entries.count(key)) fail(line_no, "duplicate key '" + key + "'");
    entries[key] = Entry{line_no, value};
  }

  RunConfig cfg;
  auto take = [&](const char* key) {
    auto it = entries.find(key);
    if (it == entries.end()) return std::optional<Entry>{};
    std::optional<Entry> e(it->second);
    entries.erase(it);
    return e;
  };

  const auto model_entry = take("model");
  if (!model_entry) throw ConfigError("config: missing required key 'model'");
  cfg.model = model_entry->value;

  std::map<std::string, double> defaults;
  try {
    defaults = preset_defaults(cfg.model);
  } catch (const ConfigError& err) {
    fail(model_entry->line, err.what());
  }

  if (auto e = take("payoff")) {
    parse_payoff_kind(e->value);
    cfg.payoff = e->value;
  }
  if (auto e = take("strike")) {
    cfg.strike = parse_double(*e, "strike");
    if (cfg.strike <= 0.0) fail(e->line, "key 'strike': must be positive");
  }
  if (auto e = take("T")) {
    cfg.T = parse_double(*e, "T");
    if (cfg.T <= 0.0) fail(e->line, "key 'T': must be positive");
  }
  if (auto e = take("n")) {
    cfg.n = static_cast<std::size_t>(parse_uint(*e, "n"));
    if (cfg.n == 0) fail(e->line, "key 'n': must be at least 1");
  }
  if (auto e = take("n_paths")) {
    cfg.n_paths = static_cast<std::size_t>(parse_uint(*e, "n_paths"));
    if (cfg.n_paths < 100) fail(e->line, "key 'n_paths': must be at least 100");
  }
  if (auto e = take("seed")) cfg.seed = parse_uint(*e, "seed");
  if (auto e = take("workers")) {
    cfg.workers = static_cast<std::size_t>(parse_uint(*e, "workers"));
    if (cfg.workers == 0) fail(e->line, "key 'workers': must be at least 1");
  }
  std::size_t greeks_line = 0;
  if (auto e = take("greeks")) {
    greeks_line = e->line;
    cfg.greeks = split_list(*e, "greeks");
    for (const auto& g : cfg.greeks) {
      try {
        parse_greek(g);
      } catch (const ConfigError& err) {
        fail(e->line, err.what());
      }
    }
  }
  if (auto e = take("variants")) {
    cfg.variants = split_list(*e, "variants");
    for (const auto& v : cfg.variants) {
      try {
        parse_variant(v);
      } catch (const ConfigError& err) {
        fail(e->line, err.what());
      }
    }
  }
  if (auto e = take("u")) {
    try {
      parse_weight_kind(e->value);
    } catch (const ConfigError& err) {
      fail(e->line, err.what());
    }
    cfg.u = e->value;
  }
  if (auto e = take("discounting")) cfg.discounting = parse_switch(*e, "discounting");
  if (auto e = take("eps_den")) cfg.eps_den = parse_double(*e, "eps_den");
  if (auto e = take("oracles")) cfg.oracles = parse_switch(*e, "oracles");
  if (auto e = take("out_json")) cfg.out_json = e->value;
  if (auto e = take("out_csv")) cfg.out_csv = e->value;

  // Whatever remains must be a parameter of the selected preset.
  cfg.model_params = defaults;
  for (const auto& [key, entry] : entries) {
    if (kCoreKeys.count(key)) continue;  // unreachable, kept for clarity
    if (cfg.model == "hull_white_like" && key == "rho") {
      fail(entry.line, "preset hull_white_like: rho is pinned to 0 and cannot be overridden");
    }
    auto it = cfg.model_params.find(key);
    if (it == cfg.model_params.end()) {
      fail(entry.line,
           "unknown key '" + key + "' (not a config key or a parameter of preset '" +
               cfg.model + "')");
    }
    it->second = parse_double(entry, key);
  }

  if (auto rho_it = cfg.model_params.find("rho"); rho_it != cfg.model_params.end()) {
    if (std::abs(rho_it->second) > 1.0) {
      throw ConfigError("config: |rho| must be <= 1, got " + format_double(rho_it->second));
    }
  }
  const bool wants_gamma =
      std::find(cfg.greeks.begin(), cfg.greeks.end(), "gamma") != cfg.greeks.end();
  if (wants_gamma && cfg.n > 512) {
    const std::size_t line = greeks_line ? greeks_line : model_entry->line;
    fail(line, "gamma requires n <= 512, got n = " + std::to_string(cfg.n));
  }
  return cfg;
}

std::string config_to_text(const RunConfig& config) {
  std::ostringstream out;
  out << "model=" << config.model << "\n";
  for (const auto& [key, value] : config.model_params) {
    out << key << "=" << format_double(value) << "\n";
  }
  out << "payoff=" << config.payoff << "\n";
  out << "strike=" << format_double(config.strike) << "\n";
  out << "T=" << format_double(config.T) << "\n";
  out << "n=" << config.n << "\n";
  out << "n_paths=" << config.n_paths << "\n";
  out << "seed=" << config.seed << "\n";
  out << "workers=" << config.workers << "\n";
  out << "greeks=";
  for (std::size_t i = 0; i < config.greeks.size(); ++i) {
    out << (i ? "," : "") << config.greeks[i];
  }
  out << "\n";
  out << "variants=";
  for (std::size_t i = 0; i < config.variants.size(); ++i) {
    out << (i ? "," : "") << config.variants[i];
  }
  out << "\n";
  out << "u=" << config.u << "\n";
  out << "discounting=" << (config.discounting ? "on" : "off") << "\n";
  out << "eps_den=" << format_double(config.eps_den) << "\n";
  out << "oracles=" << (config.oracles ? "on" : "off") << "\n";
  out << "out_json=" << config.out_json << "\n";
  out << "out_csv=" << config.out_csv << "\n";
  return out.str();
}

}  // namespace svmc
