#pragma once

#include <cstddef>
#include <vector>

#include "svmc/grid.hpp"
#include "svmc/model.hpp"
#include "svmc/path.hpp"

namespace svmc {

/// Strictly triangular first-order tangent field DY[t][s] = D_t Y_s for
/// s >= t+1, zero for s <= t: Y_t is adapted, so bumping dW_t first moves
/// Y_{t+1}, by rho * beta. Row index t runs over 0..n-1 (the derivative acts
/// on the increment dW_t), column index s over 0..n. Every field below is
/// the exact derivative of the discrete scheme in this sense, which is what
/// the bumped-path oracles measure.
using DyField = std::vector<std::vector<double>>;

/// Propagates D_t Y_s forward in s from D_t Y_{t+1} = rho * beta (constant
/// vol-of-vol: multiplicative exp(k dt) steps, which reproduces the
/// exponential-of-integral solution of the linear tangent ODE exactly on the
/// grid) or from rho * beta(Y_t) (state-dependent vol-of-vol: Euler steps of
/// the tangent SDE with the beta'(Y) noise term).
DyField first_order_dy(const PathBundle& path, const ModelSpec& model, const TimeGrid& grid);

/// L[t] = sigma(Y_t) - quad_sum_{nu > t}(sigma' sigma)(Y_nu) DY[t][nu]
///      + ito_sum_{nu > t} sigma'(Y_nu) DY[t][nu]; D_t X_T = X_T * L[t].
std::vector<double> l_process(const PathBundle& path, const DyField& dy,
                              const ModelSpec& model, const TimeGrid& grid);

/// Second-order field D_s D_t Y_at, propagated per pair with source
/// m(nu) DY[s][nu] DY[t][nu]; first nonzero at max(s,t)+2. Constant
/// vol-of-vol only.
double ddy_value(const PathBundle& path, const DyField& dy, const ModelSpec& model,
                 const TimeGrid& grid, std::size_t s, std::size_t t, std::size_t at);

/// D_s L_t^T. Symmetric in (s, t); the boundary terms fire only off the
/// diagonal (strict zero pattern).
double ds_l(const PathBundle& path, const DyField& dy, const ModelSpec& model,
            const TimeGrid& grid, std::size_t s, std::size_t t);

/// Third-order field D_r D_s D_t Y_at. Constant vol-of-vol only.
double dddy_value(const PathBundle& path, const DyField& dy, const ModelSpec& model,
                  const TimeGrid& grid, std::size_t r, std::size_t s, std::size_t t,
                  std::size_t at);

/// D_r D_s L_t^T, totally symmetric in (r, s, t).
double dr_ds_l(const PathBundle& path, const DyField& dy, const ModelSpec& model,
               const TimeGrid& grid, std::size_t r, std::size_t s, std::size_t t);

/// The per-path scalars every weight is assembled from:
///   I   = quad_sum(u_t L[t])                    (D_u X_T = X_T I)
///   J   = sum_{s,t} u_s u_t dt^2 D_s L_t^T      (D_u I; full square incl. diagonal)
///   K3  = sum_{r,s,t} u_r u_s u_t dt^3 D_r D_s L_t^T   (D_u J)
///   skorohod_u = ito_sum(u, dW), q_uu = quad_sum(u^2)
/// so D_u D_u X_T = X_T (I^2 + J) and D_u D_u D_u X_T = X_T (I^3 + 3 I J + K3).
/// z_log_* and du_z_* are the parameter tangents of log X_T and their
/// directional Malliavin derivatives, filled when the matching option is set.
struct PathFunctionals {
  double x_T = 0.0;
  double I = 0.0;
  double J = 0.0;
  double K3 = 0.0;
  double skorohod_u = 0.0;
  double q_uu = 0.0;
  double z_log_rho = 0.0;
  double du_z_rho = 0.0;
  double z_log_vega = 0.0;
  double du_z_vega = 0.0;
  bool rejected = false;
};

struct FunctionalOptions {
  bool third_order = false;  // K3, needed by Gamma; constant vol-of-vol only
  bool rho_tangent = false;
  bool vega_tangent = false;
  double eps_den = 0.0;  // |I| below this marks the path rejected (when > 0)
};

/// Single O(n) sweep computing PathFunctionals through contracted
/// accumulators A_j(nu) = sum_{t <= nu} u_t dt D_t^j Y_nu (pairwise-summed
/// fields contracted against u), algebraically identical to assembling the
/// full tangent fields and integrating; the field route above is kept for
/// oracles and cross-checks.
PathFunctionals compute_path_functionals(const PathBundle& path, const ModelSpec& model,
                                         const TimeGrid& grid, const std::vector<double>& u,
                                         const FunctionalOptions& options = {});

/// Field-level assembly of (I, J, K3, skorohod_u) from l_process / ds_l /
/// dr_ds_l, quartic in n; reference implementation for tests and oracles.
/// with_third_order toggles the K3 triple sum.
PathFunctionals weight_functionals(const PathBundle& path, const ModelSpec& model,
                                   const TimeGrid& grid, const std::vector<double>& u,
                                   bool with_third_order = true);

}  // namespace svmc
