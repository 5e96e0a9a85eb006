#include "svmc/path.hpp"

#include <cmath>
#include <sstream>

#include "svmc/errors.hpp"

namespace svmc {

PathBundle simulate_path_from_increments(const ModelSpec& model, const TimeGrid& grid,
                                         std::vector<double> dW, std::vector<double> dWp) {
  const std::size_t n = grid.n;
  if (dW.size() != n || dWp.size() != n) {
    throw std::invalid_argument("simulate_path_from_increments: increment size mismatch");
  }
  const double dt = grid.dt();
  const double rho = model.rho;
  const double rho_perp = std::sqrt(1.0 - rho * rho);

  PathBundle path;
  path.dW = std::move(dW);
  path.dWp = std::move(dWp);
  path.X.resize(n + 1);
  path.Y.resize(n + 1);
  path.X[0] = model.x0;
  path.Y[0] = model.y0;

  for (std::size_t i = 0; i < n; ++i) {
    const double t = grid.t(i);
    const double y = path.Y[i];
    const double s = model.sigma.eval(y);
    if (s == 0.0) {
      std::ostringstream msg;
      msg << "singular volatility: sigma(Y) = 0 at step " << i << ", y = " << y;
      throw NumericError(msg.str());
    }
    const double r = model.r.eval(t);
    path.X[i + 1] = path.X[i] * std::exp((r - 0.5 * s * s) * dt + s * path.dW[i]);
    path.Y[i + 1] = y + h_drift(model, t, y) * dt +
                    model.beta_at(y) * (rho * path.dW[i] + rho_perp * path.dWp[i]);
    if (!std::isfinite(path.X[i + 1]) || !std::isfinite(path.Y[i + 1])) {
      std::ostringstream msg;
      msg << "non-finite state at step " << i + 1 << " (X = " << path.X[i + 1]
          << ", Y = " << path.Y[i + 1] << ")";
      throw NumericError(msg.str());
    }
  }
  return path;
}

PathBundle simulate_path(const ModelSpec& model, const TimeGrid& grid, RngStream& rng) {
  const std::size_t n = grid.n;
  const double sqrt_dt = std::sqrt(grid.dt());
  std::vector<double> dW(n), dWp(n);
  for (std::size_t i = 0; i < n; ++i) {
    dW[i] = sqrt_dt * rng.normal();
    dWp[i] = sqrt_dt * rng.normal();
  }
  return simulate_path_from_increments(model, grid, std::move(dW), std::move(dWp));
}

}  // namespace svmc
