#pragma once

#include <vector>

#include "svmc/grid.hpp"
#include "svmc/model.hpp"
#include "svmc/rng.hpp"

namespace svmc {

/// One simulated path on the uniform grid: states at the n+1 nodes plus the
/// n Brownian increments that produced them. Increments are kept because the
/// weight functionals integrate against them.
struct PathBundle {
  std::vector<double> X;    // size n+1, X[0] = x0
  std::vector<double> Y;    // size n+1, Y[0] = y0
  std::vector<double> dW;   // size n, increments of the asset Brownian motion
  std::vector<double> dWp;  // size n, increments of the orthogonal motion
};

/// Evolves the scheme from given increments:
///   Y[i+1] = Y[i] + h(t_i, Y[i]) dt + beta(Y[i]) (rho dW[i] + sqrt(1-rho^2) dWp[i])
///   X[i+1] = X[i] * exp((r(t_i) - sigma(Y[i])^2/2) dt + sigma(Y[i]) dW[i])
/// The log-Euler asset update keeps X strictly positive. Throws NumericError
/// if sigma vanishes at a node or a state turns non-finite.
PathBundle simulate_path_from_increments(const ModelSpec& model, const TimeGrid& grid,
                                         std::vector<double> dW, std::vector<double> dWp);

/// Draws the 2n increments from `rng` (dW[i] first, then dWp[i], each step)
/// and evolves the scheme.
PathBundle simulate_path(const ModelSpec& model, const TimeGrid& grid, RngStream& rng);

}  // namespace svmc
