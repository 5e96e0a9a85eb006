#include "svmc/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "svmc/errors.hpp"
#include "svmc/path.hpp"
#include "svmc/rng.hpp"
#include "svmc/tangent.hpp"

namespace svmc {

std::string greek_name(Greek g) {
  switch (g) {
    case Greek::price: return "price";
    case Greek::delta: return "delta";
    case Greek::gamma: return "gamma";
    case Greek::rho: return "rho";
    case Greek::vega: return "vega";
  }
  return "price";
}

Greek parse_greek(const std::string& name) {
  if (name == "price") return Greek::price;
  if (name == "delta") return Greek::delta;
  if (name == "gamma") return Greek::gamma;
  if (name == "rho") return Greek::rho;
  if (name == "vega") return Greek::vega;
  throw ConfigError("unknown greek '" + name + "'; valid: price, delta, gamma, rho, vega");
}

std::string variant_name(Variant v) {
  return v == Variant::corrected ? "corrected" : "paper_verbatim";
}

Variant parse_variant(const std::string& name) {
  if (name == "corrected") return Variant::corrected;
  if (name == "paper_verbatim") return Variant::paper_verbatim;
  throw ConfigError("unknown variant '" + name + "'; valid: corrected, paper_verbatim");
}

WeightKind parse_weight_kind(const std::string& name) {
  if (name == "constant") return WeightKind::constant;
  if (name == "front_loaded") return WeightKind::front_loaded;
  if (name == "back_loaded") return WeightKind::back_loaded;
  throw ConfigError("unknown weight curve '" + name +
                    "'; valid: constant, front_loaded, back_loaded");
}

std::string weight_kind_name(WeightKind kind) {
  switch (kind) {
    case WeightKind::constant: return "constant";
    case WeightKind::front_loaded: return "front_loaded";
    case WeightKind::back_loaded: return "back_loaded";
  }
  return "constant";
}

std::vector<double> weight_nodes(WeightKind kind, const TimeGrid& grid) {
  std::vector<double> u(grid.n, 1.0);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double frac = grid.t(i) / grid.T;
    switch (kind) {
      case WeightKind::constant: u[i] = 1.0; break;
      case WeightKind::front_loaded: u[i] = 2.0 * (1.0 - frac); break;
      case WeightKind::back_loaded: u[i] = 2.0 * frac; break;
    }
  }
  return u;
}

std::pair<double, double> mc_reduce(const std::vector<double>& per_path_values) {
  if (per_path_values.empty()) throw NumericError("mc_reduce: empty sample");
  double mean = 0.0;
  for (double v : per_path_values) mean += v;
  mean /= static_cast<double>(per_path_values.size());
  if (per_path_values.size() == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double v : per_path_values) ss += (v - mean) * (v - mean);
  const double var = ss / static_cast<double>(per_path_values.size() - 1);
  return {mean, std::sqrt(var / static_cast<double>(per_path_values.size()))};
}

double discount_factor(const ModelSpec& model, const TimeGrid& grid) {
  std::vector<double> r(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) r[i] = model.r.eval(grid.t(i));
  return std::exp(-quad_sum(r, grid));
}

double resolve_eps_den(const ModelSpec& model, const TimeGrid& grid, double eps_den) {
  if (eps_den > 0.0) return eps_den;
  return 1e-8 * std::abs(model.sigma.eval(model.y0)) * grid.T;
}

namespace {

bool contains(const std::vector<Greek>& greeks, Greek g) {
  return std::find(greeks.begin(), greeks.end(), g) != greeks.end();
}

bool contains(const std::vector<Variant>& variants, Variant v) {
  return std::find(variants.begin(), variants.end(), v) != variants.end();
}

struct PathRow {
  double f = 0.0;
  PathFunctionals fn;
};

double delta_weight(const PathFunctionals& p, Variant variant) {
  const double ratio = p.skorohod_u / p.I;
  const double jii = p.J / (p.I * p.I);
  if (variant == Variant::corrected) return ratio + jii;
  return ratio - p.x_T * (1.0 - jii);
}

/// Corrected Gamma weight: integrate the corrected Delta weight by parts a
/// second time. With H = delta(u)/I + J/I^2 and D_u I = J, D_u J = K3,
/// D_u delta(u) = quad_sum(u^2):
///   w = (1/x^2) (H delta(u)/I - D_uH/I + H J/I^2 - H).
double gamma_weight_corrected(const PathFunctionals& p, double x0) {
  const double I = p.I, J = p.J, K3 = p.K3, d = p.skorohod_u;
  const double H = d / I + J / (I * I);
  const double duH = p.q_uu / I - d * J / (I * I) + K3 / (I * I) - 2.0 * J * J / (I * I * I);
  return (H * d / I - duH / I + H * J / (I * I) - H) / (x0 * x0);
}

/// Verbatim Gamma weight: literal transcription of the displayed second-order
/// formula, with H the verbatim Delta weight and
///   D_uH = quad_sum(u^2)/I - delta(u) J/I^2 - X_T (I - J/I - K3/I^2 + 2J^2/I^3),
///   term2 = (H (D_uX_T)^2 + X_T D_uX_T D_uH + H X_T D_uD_uX_T) / (x (D_uX_T)^2),
///   d_xH = -(1/x) X_T (1 - J/I^2),
/// reduced through D_uX_T = X_T I and D_uD_uX_T = X_T (I^2 + J).
double gamma_weight_verbatim(const PathFunctionals& p, double x0) {
  const double I = p.I, J = p.J, K3 = p.K3, d = p.skorohod_u;
  const double jii = J / (I * I);
  const double H = d / I - p.x_T * (1.0 - jii);
  const double duH = p.q_uu / I - d * J / (I * I) -
                     p.x_T * (I - J / I - K3 / (I * I) + 2.0 * J * J / (I * I * I));
  return (H * d / I - 2.0 * H - duH / I - H * jii - p.x_T * (1.0 - jii)) / (x0 * x0);
}

double tangent_weight(double z_log, double du_z, const PathFunctionals& p) {
  return z_log * p.skorohod_u / p.I - du_z / p.I + z_log * p.J / (p.I * p.I);
}

}  // namespace

std::vector<GreekEstimate> run_estimators(const ModelSpec& model, const Payoff& payoff,
                                          const TimeGrid& grid, std::size_t n_paths,
                                          std::uint64_t seed, WeightKind u,
                                          const std::vector<Greek>& greeks,
                                          const std::vector<Variant>& variants,
                                          const EstimatorOptions& options) {
  if (n_paths == 0) throw ConfigError("run_estimators: need at least one path");
  if (greeks.empty()) throw ConfigError("run_estimators: no greeks requested");
  const bool want_delta = contains(greeks, Greek::delta);
  const bool want_gamma = contains(greeks, Greek::gamma);
  const bool want_rho = contains(greeks, Greek::rho);
  const bool want_vega = contains(greeks, Greek::vega);
  const bool want_weights = want_delta || want_gamma || want_rho || want_vega;

  if (want_gamma && grid.n > 512) {
    throw ConfigError("gamma requires n <= 512 (third-order tangent accumulation)");
  }
  if (model.state_dependent_beta() && (want_gamma || want_rho || want_vega)) {
    throw ConfigError(
        "unsupported greek: state-dependent vol-of-vol models support price and delta only");
  }
  if (want_rho && !model.r.is_constant()) {
    throw ConfigError("rho requires a constant r curve");
  }

  FunctionalOptions fopts;
  fopts.third_order = want_gamma;
  fopts.rho_tangent = want_rho;
  fopts.vega_tangent = want_vega;
  fopts.eps_den = resolve_eps_den(model, grid, options.eps_den);

  const std::vector<double> u_nodes = weight_nodes(u, grid);
  std::vector<PathRow> rows(n_paths);

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      RngStream rng(seed, i);
      const PathBundle path = simulate_path(model, grid, rng);
      PathRow& row = rows[i];
      if (want_weights) {
        row.fn = compute_path_functionals(path, model, grid, u_nodes, fopts);
      } else {
        row.fn.x_T = path.X[grid.n];
      }
      row.f = payoff(row.fn.x_T);
    }
  };

  const std::size_t workers = std::max<std::size_t>(1, options.workers);
  if (workers == 1 || n_paths < 2 * workers) {
    work(0, n_paths);
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    const std::size_t chunk = (n_paths + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(n_paths, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back([&, begin, end] {
        try {
          work(begin, end);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  std::uint64_t n_rejected = 0;
  if (want_weights) {
    for (const PathRow& row : rows) n_rejected += row.fn.rejected ? 1 : 0;
    if (static_cast<double>(n_rejected) > 1e-3 * static_cast<double>(n_paths)) {
      throw NumericError("degenerate-denominator rejections exceed 0.1% of paths (" +
                         std::to_string(n_rejected) + " of " + std::to_string(n_paths) +
                         ")");
    }
  }

  const double disc = options.discounting ? discount_factor(model, grid) : 1.0;
  const double x0 = model.x0;

  std::vector<GreekEstimate> out;
  std::vector<double> values;
  values.reserve(n_paths);

  auto emit = [&](Greek g, Variant v, std::uint64_t rejected) {
    const auto [mean, se] = mc_reduce(values);
    GreekEstimate est;
    est.greek = g;
    est.variant = v;
    est.value = mean;
    est.std_error = se;
    est.n_paths = n_paths;
    est.n_rejected = rejected;
    est.discounting = options.discounting;
    out.push_back(est);
  };

  for (Greek g : greeks) {
    switch (g) {
      case Greek::price: {
        values.clear();
        for (const PathRow& row : rows) values.push_back(disc * row.f);
        emit(Greek::price, Variant::corrected, 0);
        break;
      }
      case Greek::delta: {
        for (Variant v : {Variant::corrected, Variant::paper_verbatim}) {
          if (!contains(variants, v)) continue;
          values.clear();
          for (const PathRow& row : rows) {
            if (row.fn.rejected) continue;
            values.push_back(disc / x0 * row.f * delta_weight(row.fn, v));
          }
          emit(Greek::delta, v, n_rejected);
        }
        break;
      }
      case Greek::gamma: {
        for (Variant v : {Variant::corrected, Variant::paper_verbatim}) {
          if (!contains(variants, v)) continue;
          values.clear();
          for (const PathRow& row : rows) {
            if (row.fn.rejected) continue;
            const double w = v == Variant::corrected
                                 ? gamma_weight_corrected(row.fn, x0)
                                 : gamma_weight_verbatim(row.fn, x0);
            values.push_back(disc * row.f * w);
          }
          emit(Greek::gamma, v, n_rejected);
        }
        break;
      }
      case Greek::rho: {
        values.clear();
        for (const PathRow& row : rows) {
          if (row.fn.rejected) continue;
          const double w = tangent_weight(row.fn.z_log_rho, row.fn.du_z_rho, row.fn);
          double v = disc * row.f * w;
          // Derivative of the discount factor itself.
          if (options.discounting) v -= grid.T * disc * row.f;
          values.push_back(v);
        }
        emit(Greek::rho, Variant::corrected, n_rejected);
        break;
      }
      case Greek::vega: {
        values.clear();
        for (const PathRow& row : rows) {
          if (row.fn.rejected) continue;
          const double w = tangent_weight(row.fn.z_log_vega, row.fn.du_z_vega, row.fn);
          values.push_back(disc * row.f * w);
        }
        emit(Greek::vega, Variant::corrected, n_rejected);
        break;
      }
    }
  }
  return out;
}

namespace {

GreekEstimate single(const std::vector<GreekEstimate>& rows) {
  if (rows.size() != 1) throw NumericError("expected exactly one estimate row");
  return rows.front();
}

}  // namespace

GreekEstimate estimate_price(const ModelSpec& model, const Payoff& payoff,
                             const TimeGrid& grid, std::size_t n_paths, std::uint64_t seed,
                             const EstimatorOptions& options) {
  return single(run_estimators(model, payoff, grid, n_paths, seed, WeightKind::constant,
                               {Greek::price}, {Variant::corrected}, options));
}

GreekEstimate estimate_delta(const ModelSpec& model, const Payoff& payoff,
                             const TimeGrid& grid, std::size_t n_paths, std::uint64_t seed,
                             WeightKind u, Variant variant, const EstimatorOptions& options) {
  return single(
      run_estimators(model, payoff, grid, n_paths, seed, u, {Greek::delta}, {variant}, options));
}

GreekEstimate estimate_gamma(const ModelSpec& model, const Payoff& payoff,
                             const TimeGrid& grid, std::size_t n_paths, std::uint64_t seed,
                             WeightKind u, Variant variant, const EstimatorOptions& options) {
  return single(
      run_estimators(model, payoff, grid, n_paths, seed, u, {Greek::gamma}, {variant}, options));
}

GreekEstimate estimate_rho(const ModelSpec& model, const Payoff& payoff, const TimeGrid& grid,
                           std::size_t n_paths, std::uint64_t seed, WeightKind u,
                           const EstimatorOptions& options) {
  return single(run_estimators(model, payoff, grid, n_paths, seed, u, {Greek::rho},
                               {Variant::corrected}, options));
}

GreekEstimate estimate_vega(const ModelSpec& model, const Payoff& payoff, const TimeGrid& grid,
                            std::size_t n_paths, std::uint64_t seed, WeightKind u,
                            const EstimatorOptions& options) {
  return single(run_estimators(model, payoff, grid, n_paths, seed, u, {Greek::vega},
                               {Variant::corrected}, options));
}

}  // namespace svmc
