#include <cstdlib>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "svmc/config.hpp"
#include "svmc/errors.hpp"
#include "svmc/report.hpp"

using namespace svmc;

TEST_CASE("minimal config fills documented defaults") {
  const RunConfig cfg = parse_config("model = black_scholes\n");
  CHECK(cfg.model == "black_scholes");
  CHECK(cfg.model_params.at("sigma0") == 0.2);
  CHECK(cfg.model_params.at("r") == 0.05);
  CHECK(cfg.payoff == "call");
  CHECK(cfg.strike == 100.0);
  CHECK(cfg.T == 1.0);
  CHECK(cfg.n == 64);
  CHECK(cfg.n_paths == 100000);
  CHECK(cfg.seed == 12345);
  CHECK(cfg.workers == 1);
  CHECK(cfg.greeks == std::vector<std::string>{"price"});
  CHECK(cfg.variants == std::vector<std::string>{"corrected"});
  CHECK(cfg.u == "constant");
  CHECK(cfg.discounting);
  CHECK(cfg.eps_den < 0.0);
  CHECK_FALSE(cfg.oracles);
}

TEST_CASE("comments, blank lines and overrides") {
  const std::string text =
      "# job description\n"
      "model = alpha_hypergeometric\n"
      "\n"
      "rho = -0.3   # flatter leverage\n"
      "payoff = digital_call\n"
      "strike=95\n"
      "T = 0.5\n"
      "n = 32\n"
      "n_paths = 5000\n"
      "seed = 42\n"
      "workers = 3\n"
      "greeks = price, delta\n"
      "variants = corrected, paper_verbatim\n"
      "u = back_loaded\n"
      "discounting = off\n"
      "eps_den = 1e-7\n"
      "oracles = on\n"
      "out_json = run.json\n"
      "out_csv = run.csv\n";
  const RunConfig cfg = parse_config(text);
  CHECK(cfg.model_params.at("rho") == -0.3);
  CHECK(cfg.model_params.at("beta") == 0.3);  // untouched preset default
  CHECK(cfg.payoff == "digital_call");
  CHECK(cfg.strike == 95.0);
  CHECK(cfg.T == 0.5);
  CHECK(cfg.n == 32);
  CHECK(cfg.n_paths == 5000);
  CHECK(cfg.seed == 42);
  CHECK(cfg.workers == 3);
  CHECK(cfg.greeks == std::vector<std::string>{"price", "delta"});
  CHECK(cfg.variants == std::vector<std::string>{"corrected", "paper_verbatim"});
  CHECK(cfg.u == "back_loaded");
  CHECK_FALSE(cfg.discounting);
  CHECK(cfg.eps_den == 1e-7);
  CHECK(cfg.oracles);
  CHECK(cfg.out_json == "run.json");
  CHECK(cfg.out_csv == "run.csv");
}

TEST_CASE("config errors name the line and key") {
  using doctest::Contains;
  CHECK_THROWS_WITH_AS(parse_config(""), Contains("missing required key 'model'"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("model=bs\n"), Contains("unknown preset 'bs'"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("model=black_scholes\nn=64\nn=32\n"),
                       Contains("line 3: duplicate key 'n'"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("model=black_scholes\njust words\n"),
                       Contains("line 2: expected key=value"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("model=black_scholes\nT=fast\n"),
                       Contains("key 'T': expected a number"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("model=black_scholes\nn_paths=99\n"),
                       Contains("key 'n_paths': must be at least 100"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("model=black_scholes\nstrike=-5\n"),
                       Contains("key 'strike': must be positive"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("model=black_scholes\nseed=-1\n"),
                       Contains("non-negative integer"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("model=alpha_hypergeometric\nrho=1.5\n"),
                       Contains("|rho| must be <= 1"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("model=black_scholes\ngreeks=gamma\nn=1024\n"),
                       Contains("gamma requires n <= 512"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("model=black_scholes\ngreeks=theta\n"),
                       Contains("unknown greek"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("model=black_scholes\nvariants=fancy\n"),
                       Contains("unknown variant"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("model=black_scholes\nu=middle\n"),
                       Contains("unknown weight curve"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("model=black_scholes\ndiscounting=maybe\n"),
                       Contains("expected on or off"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("model=hull_white_like\nrho=-0.5\n"),
                       Contains("rho is pinned to 0"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("model=black_scholes\nkappa=1\n"),
                       Contains("unknown key 'kappa'"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("model=black_scholes\ngreeks=,\n"),
                       Contains("empty list"), ConfigError);
  // A dangling comma is tolerated; only an all-blank list is an error.
  CHECK(parse_config("model=black_scholes\ngreeks=price,\n").greeks ==
        std::vector<std::string>{"price"});
}

TEST_CASE("canonical echo parses back to an equal config") {
  const std::string text =
      "model = heston_like\n"
      "xi = 0.25\n"
      "greeks = price, delta\n"
      "u = front_loaded\n"
      "n_paths = 777\n"
      "seed = 31415\n"
      "discounting = off\n";
  const RunConfig cfg = parse_config(text);
  const RunConfig again = parse_config(config_to_text(cfg));
  CHECK(again == cfg);
  CHECK(again.model_params.at("xi") == 0.25);
}

TEST_CASE("csv report has the fixed header and round-trip values") {
  RunManifest m;
  m.config = parse_config("model=black_scholes\n");
  GreekEstimate e;
  e.greek = Greek::delta;
  e.variant = Variant::corrected;
  e.value = 0.1 + 0.2;  // not representable exactly; exercises %.17g
  e.std_error = 1.0 / 3.0;
  e.n_paths = 1000;
  e.n_rejected = 2;
  m.estimates.push_back(e);

  const std::string csv = manifest_to_csv(m);
  const std::string header = csv.substr(0, csv.find('\n'));
  CHECK(header == "greek,variant,value,std_error,n_paths,n_rejected");
  CHECK(csv.find("delta,corrected,") != std::string::npos);

  // The printed doubles parse back bit-identically.
  const std::string row = csv.substr(csv.find('\n') + 1);
  const std::size_t c1 = row.find(',', row.find(',') + 1);
  const std::size_t c2 = row.find(',', c1 + 1);
  const double value = std::strtod(row.substr(c1 + 1, c2 - c1 - 1).c_str(), nullptr);
  CHECK(value == 0.1 + 0.2);
}

TEST_CASE("json report carries the config echo and estimates") {
  RunConfig cfg = parse_config(
      "model=black_scholes\nn=16\nn_paths=500\ngreeks=price,delta\nseed=7\n");
  const RunManifest m = run_job(cfg);
  CHECK(m.estimates.size() == 2);
  CHECK(m.oracle_rows.empty());
  CHECK(m.oracles_pass);
  CHECK(m.wall_clock_seconds >= 0.0);

  const nlohmann::json doc = nlohmann::json::parse(manifest_to_json(m));
  CHECK(doc.at("artifact_version").get<std::string>() == kArtifactVersion);
  CHECK(doc.at("config").at("model").get<std::string>() == "black_scholes");
  CHECK(doc.at("config").at("model_params").at("sigma0").get<double>() == 0.2);
  CHECK(doc.at("config").at("n_paths").get<std::uint64_t>() == 500);
  CHECK(doc.at("oracles_pass").get<bool>() == true);
  REQUIRE(doc.at("estimates").size() == 2);
  const auto& row = doc.at("estimates").at(1);
  CHECK(row.at("greek").get<std::string>() == "delta");
  CHECK(row.at("variant").get<std::string>() == "corrected");
  CHECK(row.at("value").get<double>() == m.estimates[1].value);
  CHECK(row.at("std_error").get<double>() == m.estimates[1].std_error);
  CHECK(row.at("n_paths").get<std::uint64_t>() == 500);
}

TEST_CASE("report files land on disk and bad paths are io errors") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "svmc_report_test";
  fs::create_directories(dir);
  const std::string path = (dir / "out.csv").string();
  write_file(path, "greek,variant\n");
  CHECK(fs::exists(path));
  CHECK(fs::file_size(path) > 0);
  fs::remove_all(dir);

  CHECK_THROWS_AS(write_file("/nonexistent_dir_xyz/out.csv", "body"), IoError);
}
