#include <cmath>
#include <cstddef>
#include <vector>

#include "doctest.h"
#include "svmc/errors.hpp"
#include "svmc/grid.hpp"
#include "svmc/model.hpp"
#include "svmc/param_tangent.hpp"
#include "svmc/path.hpp"
#include "svmc/rng.hpp"

using namespace svmc;

namespace {

ModelSpec enriched_alpha_hypergeometric() {
  return make_preset("alpha_hypergeometric", {{"mu", 0.04},
                                              {"r", 0.01},
                                              {"b_mpr", 0.2},
                                              {"alpha", 1.3},
                                              {"b", 0.8}});
}

}  // namespace

TEST_CASE("flat volatility rate tangent integrates to maturity") {
  const ModelSpec m = make_preset("black_scholes");
  const TimeGrid grid{1.0, 16};
  RngStream rng(17, 0);
  const PathBundle path = simulate_path(m, grid, rng);

  const ParamTangentPath z = param_tangent(path, m, grid, ParamTangentKind::rho_rate);
  CHECK(z.z_log[grid.n] == 1.0);
  for (std::size_t i = 0; i <= grid.n; ++i) {
    CHECK(z.z_y[i] == 0.0);
    CHECK(z.z_log[i] == grid.t(i));
  }
}

TEST_CASE("flat volatility scale tangent matches the lognormal derivative") {
  // d/d eps log X_T under sigma -> (1+eps) sigma at eps = 0 is
  // sigma0 W_T - sigma0^2 T for a lognormal asset.
  const ModelSpec m = make_preset("black_scholes");
  const TimeGrid grid{1.0, 32};
  RngStream rng(17, 9);
  const PathBundle path = simulate_path(m, grid, rng);

  const ParamTangentPath z = param_tangent(path, m, grid, ParamTangentKind::vega_scale);
  double w_T = 0.0;
  for (double d : path.dW) w_T += d;
  CHECK(z.z_log[grid.n] == doctest::Approx(0.2 * w_T - 0.04 * grid.T).epsilon(1e-12));
}

TEST_CASE("rate tangent is the derivative of the scheme in the flat rate") {
  const TimeGrid grid{1.0, 16};
  RngStream rng(404, 3);
  const ModelSpec base = enriched_alpha_hypergeometric();
  const PathBundle path = simulate_path(base, grid, rng);
  const ParamTangentPath z = param_tangent(path, base, grid, ParamTangentKind::rho_rate);
  const double z_x = path.X[grid.n] * z.z_log[grid.n];

  const double eps = 1e-5;
  const ModelSpec up = make_preset("alpha_hypergeometric", {{"mu", 0.04},
                                                            {"r", 0.01 + eps},
                                                            {"b_mpr", 0.2},
                                                            {"alpha", 1.3},
                                                            {"b", 0.8}});
  const ModelSpec dn = make_preset("alpha_hypergeometric", {{"mu", 0.04},
                                                            {"r", 0.01 - eps},
                                                            {"b_mpr", 0.2},
                                                            {"alpha", 1.3},
                                                            {"b", 0.8}});
  const double x_up = simulate_path_from_increments(up, grid, path.dW, path.dWp).X[grid.n];
  const double x_dn = simulate_path_from_increments(dn, grid, path.dW, path.dWp).X[grid.n];
  CHECK(z_x == doctest::Approx((x_up - x_dn) / (2.0 * eps)).epsilon(1e-6));
}

TEST_CASE("scale tangent is the derivative of the scheme in the volatility scale") {
  const TimeGrid grid{1.0, 16};
  RngStream rng(404, 8);
  const ModelSpec base = enriched_alpha_hypergeometric();
  const PathBundle path = simulate_path(base, grid, rng);
  const ParamTangentPath z = param_tangent(path, base, grid, ParamTangentKind::vega_scale);
  const double z_x = path.X[grid.n] * z.z_log[grid.n];

  // Scaling sigma rescales the whole function, including its appearance in
  // the risk-premium part of the drift.
  const double eps = 1e-5;
  ModelSpec up = base;
  up.sigma = SmoothFunction1D::scaled_exp(1.0 + eps, 1.0);
  ModelSpec dn = base;
  dn.sigma = SmoothFunction1D::scaled_exp(1.0 - eps, 1.0);
  const double x_up = simulate_path_from_increments(up, grid, path.dW, path.dWp).X[grid.n];
  const double x_dn = simulate_path_from_increments(dn, grid, path.dW, path.dWp).X[grid.n];
  CHECK(z_x == doctest::Approx((x_up - x_dn) / (2.0 * eps)).epsilon(1e-6));
}

TEST_CASE("rate tangent requires a flat rate curve") {
  ModelSpec m = enriched_alpha_hypergeometric();
  m.r = DeterministicCurve([](double t) { return 0.01 + 0.02 * t; });
  const TimeGrid grid{1.0, 8};
  RngStream rng(1, 0);
  const PathBundle path = simulate_path(m, grid, rng);
  CHECK_THROWS_AS(param_tangent(path, m, grid, ParamTangentKind::rho_rate), ConfigError);
  // The volatility-scale tangent has no such restriction.
  CHECK_NOTHROW(param_tangent(path, m, grid, ParamTangentKind::vega_scale));
}
