#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "svmc/errors.hpp"

namespace svmc {

/// Uniform time grid t_i = i*T/n on [0, T]. All simulation, quadrature and
/// tangent recursions share one grid; non-uniform grids are not supported.
struct TimeGrid {
  double T = 1.0;
  std::size_t n = 64;

  TimeGrid(double maturity, std::size_t steps) : T(maturity), n(steps) {
    if (!(T > 0.0)) throw ConfigError("TimeGrid: maturity T must be positive");
    if (n < 1) throw ConfigError("TimeGrid: need at least one step");
  }

  [[nodiscard]] double dt() const { return T / static_cast<double>(n); }
  [[nodiscard]] double t(std::size_t i) const {
    return (T * static_cast<double>(i)) / static_cast<double>(n);
  }
};

/// Left-point Ito sum: sum_i values[i] * dW[i].
inline double ito_sum(const std::vector<double>& values,
                      const std::vector<double>& dw) {
  if (values.size() != dw.size())
    throw std::invalid_argument("ito_sum: length mismatch between integrand and increments");
  double acc = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) acc += values[i] * dw[i];
  return acc;
}

/// Left-point rectangle rule: sum_i values[i] * dt. Used for every Lebesgue
/// integral in the engine.
inline double quad_sum(const std::vector<double>& values, const TimeGrid& grid) {
  const double dt = grid.dt();
  double acc = 0.0;
  for (double v : values) acc += v * dt;
  return acc;
}

}  // namespace svmc
