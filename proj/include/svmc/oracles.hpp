#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "svmc/estimators.hpp"
#include "svmc/grid.hpp"
#include "svmc/model.hpp"
#include "svmc/path.hpp"
#include "svmc/payoff.hpp"

namespace svmc {

/// Closed-form Black-Scholes quantities. vega_scale is the derivative in the
/// multiplicative scale (1+eps)sigma at eps = 0, i.e. sigma0 * x * phi(d1) * sqrt(T).
enum class BsQuantity { price, delta, gamma, rho, vega_scale, digital_delta };

double bs_closed_form(double x, double strike, double r, double sigma0, double T,
                      BsQuantity quantity, PayoffKind kind = PayoffKind::call);

/// One oracle comparison. Statistical rows gate on |estimate - oracle| <=
/// 3 * std_error (tolerance = 0); deterministic rows carry tolerance > 0 and
/// gate on |estimate - oracle| <= tolerance.
struct OracleReport {
  std::string quantity;
  double oracle_value = 0.0;
  double estimate = 0.0;
  double std_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

OracleReport make_oracle_report(std::string quantity, double oracle_value, double estimate,
                                double std_error, double tolerance = 0.0);

/// Monte Carlo check of E[F delta(u)] = E[D_u F] for F = exp(W_T - T/2),
/// u == 1, T = 1: both E[F W_T] and E[T F] must land within 3 std errors
/// of T. Returns the two rows.
std::vector<OracleReport> duality_check(std::size_t n_paths, std::uint64_t seed);

/// Deterministic tangent-field oracles on one path (constant vol-of-vol,
/// rejected otherwise):
///   dy_exp_integral   max rel. diff of DY[t][s] vs beta rho exp(quad_sum k),   tol 1e-10
///   ddy_var_of_const  max rel. diff of DDY(s,t,T) vs the variation-of-constants
///                     quadrature,                                              tol 1e-8
///   bumped_l          max rel. diff of X_T L[t] vs the central difference of
///                     X_T under dW[t] +- h, h = 1e-5,                          tol 5e-3
///   bumped_du_x       X_T I vs central difference under dW += h u dt, h=1e-5,  tol 5e-3
///   bumped_du_du_x    X_T (I^2+J) vs second central difference, h = 1e-4,      tol 1e-2
std::vector<OracleReport> tangent_oracles(const PathBundle& path, const ModelSpec& model,
                                          const TimeGrid& grid);

/// Closed-form first-order tangent: beta * rho * exp(quad_sum of k over
/// [t, s)), the exact grid solution of the linear tangent ODE.
double dy_exp_integral_oracle(const PathBundle& path, const ModelSpec& model,
                              const TimeGrid& grid, std::size_t t, std::size_t s);

/// Variation-of-constants quadrature for the second-order tangent at the
/// horizon: sum over nu >= max(s,t) of m(nu) DY[s][nu] DY[t][nu] dt carried to
/// T by the exponential integrating factor, with DY from the closed form.
double ddy_var_of_const_oracle(const PathBundle& path, const ModelSpec& model,
                               const TimeGrid& grid, std::size_t s, std::size_t t);

/// Finite-difference Greek with common random numbers (same seed, same
/// per-path substreams on every run). delta/rho/vega: central difference
/// scaled by 2*bump; gamma: second central difference scaled by bump^2.
/// Std error comes from the per-path differenced values. bump <= 0 is a
/// ConfigError. Accumulation is local to this routine.
enum class FdGreek { delta, gamma, rho, vega };

GreekEstimate fd_greek(const ModelSpec& model, const Payoff& payoff, const TimeGrid& grid,
                       std::size_t n_paths, std::uint64_t seed, FdGreek param, double bump,
                       bool discounting = true);

}  // namespace svmc
