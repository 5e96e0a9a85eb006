#include "svmc/param_tangent.hpp"

namespace svmc {

ParamTangentPath param_tangent(const PathBundle& path, const ModelSpec& model,
                               const TimeGrid& grid, ParamTangentKind kind) {
  if (kind == ParamTangentKind::rho_rate && !model.r.is_constant()) {
    throw ConfigError("param_tangent: rate tangent requires a constant r curve");
  }
  const std::size_t n = grid.n;
  const double dt = grid.dt();
  ParamTangentPath out;
  out.z_log.resize(n + 1, 0.0);
  out.z_y.resize(n + 1, 0.0);
  ParamTangentState state;
  for (std::size_t i = 0; i < n; ++i) {
    state = param_tangent_step(model, kind, grid.t(i), path.Y[i], state, dt, path.dW[i],
                               path.dWp[i]);
    out.z_log[i + 1] = state.z_log;
    out.z_y[i + 1] = state.z_y;
  }
  return out;
}

}  // namespace svmc
