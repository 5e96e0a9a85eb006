#pragma once

#include <cmath>
#include <vector>

#include "svmc/errors.hpp"
#include "svmc/grid.hpp"
#include "svmc/model.hpp"
#include "svmc/path.hpp"

namespace svmc {

/// Parameter the pathwise tangent differentiates against: a parallel shift
/// of the flat short rate, or the multiplicative volatility scale
/// sigma_eps(y) = (1 + eps) sigma(y) at eps = 0.
enum class ParamTangentKind { rho_rate, vega_scale };

/// Tangent state after one step. Z_log = d(log X)/d(theta), Z_Y = dY/d(theta);
/// the asset tangent is recovered as Z_X = X * Z_log.
struct ParamTangentState {
  double z_log = 0.0;
  double z_y = 0.0;
};

/// One step of the exact derivative of the discrete scheme: differentiate the
/// log-Euler X update and the Euler Y update in the parameter. Shared by the
/// standalone tangent op and the weight-functional sweep so both produce
/// bit-identical tangents.
///   rho_rate:   dZ_log = (1 - sigma sigma' Z_Y) dt + sigma' Z_Y dW
///               dZ_Y   = (k Z_Y + beta(y) rho / sigma) dt + beta'(y) Z_Y dWt
///   vega_scale: dZ_log = (-sigma^2 - sigma sigma' Z_Y) dt + (sigma + sigma' Z_Y) dW
///               dZ_Y   = (k Z_Y + beta(y) rho (mu - r)/sigma) dt + beta'(y) Z_Y dWt
/// with k the drift tangent coefficient and dWt = rho dW + sqrt(1-rho^2) dW'.
inline ParamTangentState param_tangent_step(const ModelSpec& model, ParamTangentKind kind,
                                            double t, double y, ParamTangentState state,
                                            double dt, double dw, double dwp) {
  const double s0 = model.sigma.eval(y);
  const double s1 = model.sigma.deriv1(y);
  const bool vega = kind == ParamTangentKind::vega_scale;

  const double drift_log = (vega ? -s0 * s0 : 1.0) - s0 * s1 * state.z_y;
  const double diff_log = (vega ? s0 : 0.0) + s1 * state.z_y;

  const double k = tangent_coefficients(model, t, y).k;
  const double dtheta_h = model.beta_at(y) * model.rho *
                          (vega ? (model.mu.eval(t) - model.r.eval(t)) : 1.0) / s0;
  const double dwt = model.rho * dw + std::sqrt(1.0 - model.rho * model.rho) * dwp;

  ParamTangentState next;
  next.z_log = state.z_log + drift_log * dt + diff_log * dw;
  next.z_y = state.z_y + (k * state.z_y + dtheta_h) * dt +
             model.beta_deriv1(y) * state.z_y * dwt;
  return next;
}

/// Full tangent paths, z_log[i] and z_y[i] at every node, starting from 0.
struct ParamTangentPath {
  std::vector<double> z_log;  // size n+1
  std::vector<double> z_y;    // size n+1
};

/// Propagates the tangent along a simulated path. rho_rate requires a
/// constant r curve (ConfigError otherwise).
ParamTangentPath param_tangent(const PathBundle& path, const ModelSpec& model,
                               const TimeGrid& grid, ParamTangentKind kind);

}  // namespace svmc
