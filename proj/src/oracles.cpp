#include "svmc/oracles.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>

#include "svmc/errors.hpp"
#include "svmc/rng.hpp"
#include "svmc/tangent.hpp"

namespace svmc {

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * 3.14159265358979323846);
}

/// Two-pass mean / standard error, local to the oracle module on purpose:
/// oracle statistics must not flow through the estimator reduction they are
/// checking.
std::pair<double, double> oracle_mean_se(const std::vector<double>& values) {
  if (values.empty()) throw NumericError("oracle_mean_se: empty sample");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  if (values.size() == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double var = ss / static_cast<double>(values.size() - 1);
  return {mean, std::sqrt(var / static_cast<double>(values.size()))};
}

double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

ModelSpec with_sigma_scale(const ModelSpec& model, double scale) {
  ModelSpec out = model;
  const SmoothFunction1D base = model.sigma;
  out.sigma = SmoothFunction1D(
      [base, scale](double y) { return scale * base.eval(y); },
      [base, scale](double y) { return scale * base.deriv1(y); },
      [base, scale](double y) { return scale * base.deriv2(y); },
      [base, scale](double y) { return scale * base.deriv3(y); });
  return out;
}

ModelSpec with_rate_shift(const ModelSpec& model, double shift) {
  ModelSpec out = model;
  const DeterministicCurve base = model.r;
  out.r = DeterministicCurve([base, shift](double t) { return base.eval(t) + shift; });
  return out;
}

double fd_discount(const ModelSpec& model, const TimeGrid& grid, bool discounting) {
  if (!discounting) return 1.0;
  const double dt = grid.dt();
  double acc = 0.0;
  for (std::size_t i = 0; i < grid.n; ++i) acc += model.r.eval(grid.t(i)) * dt;
  return std::exp(-acc);
}

}  // namespace

double bs_closed_form(double x, double strike, double r, double sigma0, double T,
                      BsQuantity quantity, PayoffKind kind) {
  if (!(x > 0.0) || !(strike > 0.0) || !(sigma0 > 0.0) || !(T > 0.0)) {
    throw std::domain_error("bs_closed_form: require x, K, sigma0, T > 0");
  }
  const double sq = sigma0 * std::sqrt(T);
  const double d1 = (std::log(x / strike) + (r + 0.5 * sigma0 * sigma0) * T) / sq;
  const double d2 = d1 - sq;
  const double df = std::exp(-r * T);

  switch (quantity) {
    case BsQuantity::price:
      switch (kind) {
        case PayoffKind::call:
          return x * normal_cdf(d1) - strike * df * normal_cdf(d2);
        case PayoffKind::put:
          return strike * df * normal_cdf(-d2) - x * normal_cdf(-d1);
        case PayoffKind::digital_call:
          return df * normal_cdf(d2);
      }
      break;
    case BsQuantity::delta:
      switch (kind) {
        case PayoffKind::call:
          return normal_cdf(d1);
        case PayoffKind::put:
          return normal_cdf(d1) - 1.0;
        case PayoffKind::digital_call:
          return df * normal_pdf(d2) / (x * sq);
      }
      break;
    case BsQuantity::gamma:
      switch (kind) {
        case PayoffKind::call:
        case PayoffKind::put:
          return normal_pdf(d1) / (x * sq);
        case PayoffKind::digital_call:
          return -df * normal_pdf(d2) * d1 / (x * x * sigma0 * sigma0 * T);
      }
      break;
    case BsQuantity::rho:
      switch (kind) {
        case PayoffKind::call:
          return strike * T * df * normal_cdf(d2);
        case PayoffKind::put:
          return -strike * T * df * normal_cdf(-d2);
        case PayoffKind::digital_call:
          return df * (normal_pdf(d2) * std::sqrt(T) / sigma0 - T * normal_cdf(d2));
      }
      break;
    case BsQuantity::vega_scale:
      switch (kind) {
        case PayoffKind::call:
        case PayoffKind::put:
          return sigma0 * x * normal_pdf(d1) * std::sqrt(T);
        case PayoffKind::digital_call:
          return -df * normal_pdf(d2) * d1;
      }
      break;
    case BsQuantity::digital_delta:
      return df * normal_pdf(d2) / (x * sq);
  }
  throw std::domain_error("bs_closed_form: unknown quantity");
}

OracleReport make_oracle_report(std::string quantity, double oracle_value, double estimate,
                                double std_error, double tolerance) {
  OracleReport row;
  row.quantity = std::move(quantity);
  row.oracle_value = oracle_value;
  row.estimate = estimate;
  row.std_error = std_error;
  row.tolerance = tolerance;
  row.pass = tolerance > 0.0 ? std::abs(estimate - oracle_value) <= tolerance
                             : std::abs(estimate - oracle_value) <= 3.0 * std_error;
  return row;
}

std::vector<OracleReport> duality_check(std::size_t n_paths, std::uint64_t seed) {
  const double T = 1.0;
  std::vector<double> lhs(n_paths), rhs(n_paths);
  for (std::size_t i = 0; i < n_paths; ++i) {
    RngStream rng(seed, i);
    const double w_T = std::sqrt(T) * rng.normal();
    const double F = std::exp(w_T - 0.5 * T);
    lhs[i] = F * w_T;   // E[F delta(u)] with u == 1
    rhs[i] = T * F;     // E[D_u F]
  }
  const auto [lm, ls] = oracle_mean_se(lhs);
  const auto [rm, rs] = oracle_mean_se(rhs);
  return {make_oracle_report("duality_lhs", T, lm, ls),
          make_oracle_report("duality_rhs", T, rm, rs)};
}

double dy_exp_integral_oracle(const PathBundle& path, const ModelSpec& model,
                              const TimeGrid& grid, std::size_t t, std::size_t s) {
  if (model.state_dependent_beta()) {
    throw ConfigError("dy_exp_integral_oracle: requires constant vol-of-vol");
  }
  if (s <= t) return 0.0;  // strict field: Y_t is adapted, no mass before t+1
  const double dt = grid.dt();
  double k_int = 0.0;
  for (std::size_t nu = t + 1; nu < s; ++nu) {
    k_int += tangent_coefficients(model, grid.t(nu), path.Y[nu]).k * dt;
  }
  return model.beta * model.rho * std::exp(k_int);
}

double ddy_var_of_const_oracle(const PathBundle& path, const ModelSpec& model,
                               const TimeGrid& grid, std::size_t s, std::size_t t) {
  if (model.state_dependent_beta()) {
    throw ConfigError("ddy_var_of_const_oracle: requires constant vol-of-vol");
  }
  const std::size_t n = grid.n;
  const double dt = grid.dt();
  // Suffix sums K[j] = sum_{nu >= j} k_nu dt, so the integrating factor from
  // nu to T is exp(K[nu]) and the closed-form DY[t][nu] is brho exp(K[t+1]-K[nu])
  // for nu >= t+1 (strict field, zero before).
  std::vector<double> K(n + 1, 0.0), m(n, 0.0);
  for (std::size_t nu = n; nu-- > 0;) {
    const auto coef = tangent_coefficients(model, grid.t(nu), path.Y[nu]);
    K[nu] = K[nu + 1] + coef.k * dt;
    m[nu] = coef.m;
  }
  const double brho = model.beta * model.rho;
  double acc = 0.0;
  for (std::size_t nu = std::max(s, t) + 1; nu < n; ++nu) {
    const double dy_s = brho * std::exp(K[s + 1] - K[nu]);
    const double dy_t = brho * std::exp(K[t + 1] - K[nu]);
    acc += m[nu] * dy_s * dy_t * dt * std::exp(K[nu + 1]);
  }
  return acc;
}

std::vector<OracleReport> tangent_oracles(const PathBundle& path, const ModelSpec& model,
                                          const TimeGrid& grid) {
  if (model.state_dependent_beta()) {
    throw ConfigError("tangent_oracles: requires constant vol-of-vol");
  }
  const std::size_t n = grid.n;
  const double dt = grid.dt();
  std::vector<OracleReport> rows;

  const DyField dy = first_order_dy(path, model, grid);
  double max_rel = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t s = t; s <= n; ++s) {
      max_rel = std::max(max_rel, rel_diff(dy[t][s], dy_exp_integral_oracle(path, model, grid, t, s)));
    }
  }
  rows.push_back(make_oracle_report("dy_exp_integral", 0.0, max_rel, 0.0, 1e-10));

  max_rel = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t) {
      max_rel = std::max(max_rel, rel_diff(ddy_value(path, dy, model, grid, s, t, n),
                                           ddy_var_of_const_oracle(path, model, grid, s, t)));
    }
  }
  rows.push_back(make_oracle_report("ddy_var_of_const", 0.0, max_rel, 0.0, 1e-8));

  const std::vector<double> L = l_process(path, dy, model, grid);
  const double x_T = path.X[n];
  max_rel = 0.0;
  {
    const double h = 1e-5;
    for (std::size_t t = 0; t < n; ++t) {
      std::vector<double> up = path.dW, dn = path.dW;
      up[t] += h;
      dn[t] -= h;
      const double x_up = simulate_path_from_increments(model, grid, up, path.dWp).X[n];
      const double x_dn = simulate_path_from_increments(model, grid, dn, path.dWp).X[n];
      max_rel = std::max(max_rel, rel_diff(x_T * L[t], (x_up - x_dn) / (2.0 * h)));
    }
  }
  rows.push_back(make_oracle_report("bumped_l", 0.0, max_rel, 0.0, 5e-3));

  const std::vector<double> u(n, 1.0);
  FunctionalOptions opts;
  opts.third_order = true;
  const PathFunctionals f = compute_path_functionals(path, model, grid, u, opts);
  {
    const double h = 1e-5;
    std::vector<double> up = path.dW, dn = path.dW;
    for (std::size_t i = 0; i < n; ++i) {
      up[i] += h * u[i] * dt;
      dn[i] -= h * u[i] * dt;
    }
    const double x_up = simulate_path_from_increments(model, grid, up, path.dWp).X[n];
    const double x_dn = simulate_path_from_increments(model, grid, dn, path.dWp).X[n];
    rows.push_back(make_oracle_report("bumped_du_x", 0.0,
                                      rel_diff(x_T * f.I, (x_up - x_dn) / (2.0 * h)), 0.0,
                                      5e-3));
  }
  {
    const double h = 1e-4;
    std::vector<double> up = path.dW, dn = path.dW;
    for (std::size_t i = 0; i < n; ++i) {
      up[i] += h * u[i] * dt;
      dn[i] -= h * u[i] * dt;
    }
    const double x_up = simulate_path_from_increments(model, grid, up, path.dWp).X[n];
    const double x_dn = simulate_path_from_increments(model, grid, dn, path.dWp).X[n];
    const double fd2 = (x_up - 2.0 * x_T + x_dn) / (h * h);
    rows.push_back(make_oracle_report("bumped_du_du_x", 0.0,
                                      rel_diff(x_T * (f.I * f.I + f.J), fd2), 0.0, 1e-2));
  }
  return rows;
}

GreekEstimate fd_greek(const ModelSpec& model, const Payoff& payoff, const TimeGrid& grid,
                       std::size_t n_paths, std::uint64_t seed, FdGreek param, double bump,
                       bool discounting) {
  if (!(bump > 0.0)) throw ConfigError("fd_greek: bump must be positive");
  if (n_paths == 0) throw ConfigError("fd_greek: need at least one path");

  ModelSpec up = model, dn = model;
  switch (param) {
    case FdGreek::delta:
    case FdGreek::gamma:
      up.x0 = model.x0 + bump;
      dn.x0 = model.x0 - bump;
      if (!(dn.x0 > 0.0)) throw ConfigError("fd_greek: bump exceeds the spot");
      break;
    case FdGreek::rho:
      up = with_rate_shift(model, bump);
      dn = with_rate_shift(model, -bump);
      break;
    case FdGreek::vega:
      up = with_sigma_scale(model, 1.0 + bump);
      dn = with_sigma_scale(model, 1.0 - bump);
      break;
  }
  const double disc_up = fd_discount(up, grid, discounting);
  const double disc_dn = fd_discount(dn, grid, discounting);
  const double disc_c = fd_discount(model, grid, discounting);
  const bool second = param == FdGreek::gamma;

  const std::size_t n = grid.n;
  const double sqrt_dt = std::sqrt(grid.dt());
  std::vector<double> diffs(n_paths);
  std::vector<double> dW(n), dWp(n);
  for (std::size_t i = 0; i < n_paths; ++i) {
    RngStream rng(seed, i);
    for (std::size_t j = 0; j < n; ++j) {
      dW[j] = sqrt_dt * rng.normal();
      dWp[j] = sqrt_dt * rng.normal();
    }
    const double v_up = disc_up * payoff(simulate_path_from_increments(up, grid, dW, dWp).X[n]);
    const double v_dn = disc_dn * payoff(simulate_path_from_increments(dn, grid, dW, dWp).X[n]);
    if (second) {
      const double v_c = disc_c * payoff(simulate_path_from_increments(model, grid, dW, dWp).X[n]);
      diffs[i] = (v_up - 2.0 * v_c + v_dn) / (bump * bump);
    } else {
      diffs[i] = (v_up - v_dn) / (2.0 * bump);
    }
  }
  const auto [mean, se] = oracle_mean_se(diffs);

  GreekEstimate out;
  switch (param) {
    case FdGreek::delta: out.greek = Greek::delta; break;
    case FdGreek::gamma: out.greek = Greek::gamma; break;
    case FdGreek::rho: out.greek = Greek::rho; break;
    case FdGreek::vega: out.greek = Greek::vega; break;
  }
  out.variant = Variant::corrected;
  out.value = mean;
  out.std_error = se;
  out.n_paths = n_paths;
  out.n_rejected = 0;
  out.discounting = discounting;
  return out;
}

}  // namespace svmc
