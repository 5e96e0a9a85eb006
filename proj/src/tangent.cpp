#include "svmc/tangent.hpp"

#include <algorithm>
#include <cmath>

#include "svmc/errors.hpp"
#include "svmc/param_tangent.hpp"

namespace svmc {

namespace {

void require_constant_beta(const ModelSpec& model, const char* op) {
  if (model.state_dependent_beta()) {
    throw ConfigError(std::string(op) +
                      ": state-dependent vol-of-vol supports first-order quantities only");
  }
}

}  // namespace

DyField first_order_dy(const PathBundle& path, const ModelSpec& model, const TimeGrid& grid) {
  const std::size_t n = grid.n;
  const double dt = grid.dt();
  DyField dy(n, std::vector<double>(n + 1, 0.0));

  std::vector<double> k(n);
  for (std::size_t i = 0; i < n; ++i) {
    k[i] = tangent_coefficients(model, grid.t(i), path.Y[i]).k;
  }

  // Strict zero pattern: Y at node t is adapted, so its derivative with
  // respect to dW_t vanishes and the beta rho initial mass lands at node
  // t+1, exactly as a bumped increment propagates through the scheme.
  if (!model.state_dependent_beta()) {
    // Homogeneous propagation uses the exp(k dt) step, the exact grid
    // solution exp(quad_sum k) of the linear tangent ODE dDY = k DY ds.
    const double brho = model.beta * model.rho;
    for (std::size_t t = 0; t < n; ++t) {
      dy[t][t + 1] = brho;
      for (std::size_t i = t + 1; i < n; ++i) dy[t][i + 1] = dy[t][i] * std::exp(k[i] * dt);
    }
    return dy;
  }

  const double rho_perp = std::sqrt(1.0 - model.rho * model.rho);
  std::vector<double> factor(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double dwt = model.rho * path.dW[i] + rho_perp * path.dWp[i];
    factor[i] = 1.0 + k[i] * dt + model.beta_deriv1(path.Y[i]) * dwt;
  }
  for (std::size_t t = 0; t < n; ++t) {
    dy[t][t + 1] = model.rho * model.beta_at(path.Y[t]);
    for (std::size_t i = t + 1; i < n; ++i) dy[t][i + 1] = dy[t][i] * factor[i];
  }
  return dy;
}

std::vector<double> l_process(const PathBundle& path, const DyField& dy,
                              const ModelSpec& model, const TimeGrid& grid) {
  const std::size_t n = grid.n;
  const double dt = grid.dt();
  std::vector<double> L(n, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    double acc = model.sigma.eval(path.Y[t]);
    for (std::size_t nu = t; nu < n; ++nu) {
      const double s0 = model.sigma.eval(path.Y[nu]);
      const double s1 = model.sigma.deriv1(path.Y[nu]);
      acc += -s1 * s0 * dy[t][nu] * dt + s1 * dy[t][nu] * path.dW[nu];
    }
    L[t] = acc;
  }
  return L;
}

double ddy_value(const PathBundle& path, const DyField& dy, const ModelSpec& model,
                 const TimeGrid& grid, std::size_t s, std::size_t t, std::size_t at) {
  require_constant_beta(model, "ddy_value");
  const double dt = grid.dt();
  double v = 0.0;
  for (std::size_t nu = std::max(s, t); nu < at; ++nu) {
    const auto tc = tangent_coefficients(model, grid.t(nu), path.Y[nu]);
    v = v * std::exp(tc.k * dt) + tc.m * dy[s][nu] * dy[t][nu] * dt;
  }
  return v;
}

double ds_l(const PathBundle& path, const DyField& dy, const ModelSpec& model,
            const TimeGrid& grid, std::size_t s, std::size_t t) {
  require_constant_beta(model, "ds_l");
  const std::size_t n = grid.n;
  const double dt = grid.dt();
  // Both boundary terms are evaluated unconditionally; the strict zero
  // pattern of DY supplies the indicators (each fires only off-diagonal).
  double acc = model.sigma.deriv1(path.Y[t]) * dy[s][t] +
               model.sigma.deriv1(path.Y[s]) * dy[t][s];
  double ddy = 0.0;
  for (std::size_t nu = std::max(s, t); nu < n; ++nu) {
    const double y = path.Y[nu];
    const auto tc = tangent_coefficients(model, grid.t(nu), y);
    const double s0 = model.sigma.eval(y);
    const double s1 = model.sigma.deriv1(y);
    const double s2 = model.sigma.deriv2(y);
    const double pair = dy[s][nu] * dy[t][nu];
    acc += -((s2 * s0 + s1 * s1) * pair + s1 * s0 * ddy) * dt +
           (s2 * pair + s1 * ddy) * path.dW[nu];
    ddy = ddy * std::exp(tc.k * dt) + tc.m * pair * dt;
  }
  return acc;
}

double dddy_value(const PathBundle& path, const DyField& dy, const ModelSpec& model,
                  const TimeGrid& grid, std::size_t r, std::size_t s, std::size_t t,
                  std::size_t at) {
  require_constant_beta(model, "dddy_value");
  const double dt = grid.dt();
  const std::size_t start = std::max({r, s, t});
  double ddy_rs = ddy_value(path, dy, model, grid, r, s, start);
  double ddy_rt = ddy_value(path, dy, model, grid, r, t, start);
  double ddy_st = ddy_value(path, dy, model, grid, s, t, start);
  double v = 0.0;
  for (std::size_t nu = start; nu < at; ++nu) {
    const auto tc = tangent_coefficients(model, grid.t(nu), path.Y[nu]);
    const double e = std::exp(tc.k * dt);
    const double source =
        tc.m * (ddy_rs * dy[t][nu] + ddy_rt * dy[s][nu] + ddy_st * dy[r][nu]) +
        tc.p * dy[r][nu] * dy[s][nu] * dy[t][nu];
    v = v * e + source * dt;
    ddy_rs = ddy_rs * e + tc.m * dy[r][nu] * dy[s][nu] * dt;
    ddy_rt = ddy_rt * e + tc.m * dy[r][nu] * dy[t][nu] * dt;
    ddy_st = ddy_st * e + tc.m * dy[s][nu] * dy[t][nu] * dt;
  }
  return v;
}

double dr_ds_l(const PathBundle& path, const DyField& dy, const ModelSpec& model,
               const TimeGrid& grid, std::size_t r, std::size_t s, std::size_t t) {
  require_constant_beta(model, "dr_ds_l");
  const std::size_t n = grid.n;
  const double dt = grid.dt();

  // Boundary terms: differentiating sigma'(Y_t) DY[s][t] gives the t row;
  // the s row comes from the stochastic-integral boundary of D_s L, and the
  // r row from taking D_r of that stochastic integral. The strict DY / DDY
  // zero patterns encode every indicator.
  double acc = model.sigma.deriv2(path.Y[t]) * dy[r][t] * dy[s][t] +
               model.sigma.deriv1(path.Y[t]) * ddy_value(path, dy, model, grid, r, s, t) +
               model.sigma.deriv2(path.Y[s]) * dy[r][s] * dy[t][s] +
               model.sigma.deriv1(path.Y[s]) * ddy_value(path, dy, model, grid, r, t, s) +
               model.sigma.deriv2(path.Y[r]) * dy[s][r] * dy[t][r] +
               model.sigma.deriv1(path.Y[r]) * ddy_value(path, dy, model, grid, s, t, r);

  const std::size_t start = std::max({r, s, t});
  double ddy_rs = ddy_value(path, dy, model, grid, r, s, start);
  double ddy_rt = ddy_value(path, dy, model, grid, r, t, start);
  double ddy_st = ddy_value(path, dy, model, grid, s, t, start);
  double dddy = 0.0;
  for (std::size_t nu = start; nu < n; ++nu) {
    const double y = path.Y[nu];
    const auto tc = tangent_coefficients(model, grid.t(nu), y);
    const double e = std::exp(tc.k * dt);
    const double s0 = model.sigma.eval(y);
    const double s1 = model.sigma.deriv1(y);
    const double s2 = model.sigma.deriv2(y);
    const double s3 = model.sigma.deriv3(y);
    const double dyr = dy[r][nu], dys = dy[s][nu], dyt = dy[t][nu];
    const double triple = dyr * dys * dyt;
    const double pairs = ddy_rs * dyt + ddy_rt * dys + ddy_st * dyr;
    acc += -((s3 * s0 + 3.0 * s1 * s2) * triple + (s2 * s0 + s1 * s1) * pairs +
             s1 * s0 * dddy) *
               dt +
           (s3 * triple + s2 * pairs + s1 * dddy) * path.dW[nu];
    const double source = tc.m * pairs + tc.p * triple;
    dddy = dddy * e + source * dt;
    ddy_rs = ddy_rs * e + tc.m * dyr * dys * dt;
    ddy_rt = ddy_rt * e + tc.m * dyr * dyt * dt;
    ddy_st = ddy_st * e + tc.m * dys * dyt * dt;
  }
  return acc;
}

PathFunctionals weight_functionals(const PathBundle& path, const ModelSpec& model,
                                   const TimeGrid& grid, const std::vector<double>& u,
                                   bool with_third_order) {
  const std::size_t n = grid.n;
  if (u.size() != n) throw std::invalid_argument("weight_functionals: u size mismatch");
  const double dt = grid.dt();

  const DyField dy = first_order_dy(path, model, grid);
  const std::vector<double> L = l_process(path, dy, model, grid);

  PathFunctionals f;
  f.x_T = path.X[n];
  std::vector<double> uL(n), uu(n);
  for (std::size_t i = 0; i < n; ++i) {
    uL[i] = u[i] * L[i];
    uu[i] = u[i] * u[i];
  }
  f.I = quad_sum(uL, grid);
  f.q_uu = quad_sum(uu, grid);
  f.skorohod_u = ito_sum(u, path.dW);

  double J = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t) {
      J += u[s] * u[t] * dt * dt * ds_l(path, dy, model, grid, s, t);
    }
  }
  f.J = J;

  if (with_third_order) {
    double K3 = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t t = 0; t < n; ++t) {
          K3 += u[r] * u[s] * u[t] * dt * dt * dt *
                dr_ds_l(path, dy, model, grid, r, s, t);
        }
      }
    }
    f.K3 = K3;
  }
  return f;
}

PathFunctionals compute_path_functionals(const PathBundle& path, const ModelSpec& model,
                                         const TimeGrid& grid, const std::vector<double>& u,
                                         const FunctionalOptions& options) {
  const std::size_t n = grid.n;
  if (u.size() != n) {
    throw std::invalid_argument("compute_path_functionals: u size mismatch");
  }
  const double dt = grid.dt();
  const bool state_beta = model.state_dependent_beta();
  if (state_beta && options.third_order) {
    throw ConfigError(
        "compute_path_functionals: state-dependent vol-of-vol supports first-order "
        "quantities only");
  }
  if (state_beta && (options.rho_tangent || options.vega_tangent)) {
    throw ConfigError(
        "compute_path_functionals: parameter tangents require constant vol-of-vol");
  }

  PathFunctionals f;
  f.x_T = path.X[n];

  const double rho = model.rho;
  const double rho_perp = std::sqrt(1.0 - rho * rho);
  const double brho = model.beta * rho;

  // Contracted accumulators A1 = sum u dt DY, A2 = sum u u dt^2 DDY,
  // A3 = sum^3 u dt^3 DDDY at the current node, plus AZ = sum u dt D_t Z_Y
  // for each parameter tangent. All start at zero: the strict fields carry
  // no mass at node 0.
  double A1 = 0.0;
  double A2 = 0.0;
  double A3 = 0.0;
  double AZ_rho = 0.0, AZ_vega = 0.0;
  ParamTangentState z_rho, z_vega;

  for (std::size_t nu = 0; nu < n; ++nu) {
    const double y = path.Y[nu];
    const double t = grid.t(nu);
    const double dw = path.dW[nu];
    const auto tc = tangent_coefficients(model, t, y);
    const double s0 = model.sigma.eval(y);
    const double s1 = model.sigma.deriv1(y);
    const double s2 = model.sigma.deriv2(y);
    const double un = u[nu];

    f.skorohod_u += un * dw;
    f.q_uu += un * un * dt;
    f.I += un * s0 * dt + (-s1 * s0 * dt + s1 * dw) * A1;
    f.J += 2.0 * un * s1 * A1 * dt -
           ((s2 * s0 + s1 * s1) * A1 * A1 + s1 * s0 * A2) * dt +
           (s2 * A1 * A1 + s1 * A2) * dw;

    if (options.third_order) {
      const double s3 = model.sigma.deriv3(y);
      f.K3 += 3.0 * un * (s2 * A1 * A1 + s1 * A2) * dt -
              ((s3 * s0 + 3.0 * s1 * s2) * A1 * A1 * A1 +
               3.0 * (s2 * s0 + s1 * s1) * A2 * A1 + s1 * s0 * A3) *
                  dt +
              (s3 * A1 * A1 * A1 + 3.0 * s2 * A2 * A1 + s1 * A3) * dw;
    }
    if (options.rho_tangent) {
      f.du_z_rho += un * s1 * z_rho.z_y * dt +
                    (-(s1 * s1 + s0 * s2) * z_rho.z_y * dt + s2 * z_rho.z_y * dw) * A1 +
                    (-s0 * s1 * dt + s1 * dw) * AZ_rho;
    }
    if (options.vega_tangent) {
      f.du_z_vega += un * (s1 * z_vega.z_y + s0) * dt +
                     (-((s1 * s1 + s0 * s2) * z_vega.z_y + 2.0 * s0 * s1) * dt +
                      (s2 * z_vega.z_y + s1) * dw) *
                         A1 +
                     (-s0 * s1 * dt + s1 * dw) * AZ_vega;
    }

    // Propagate to node nu+1. Every right-hand side uses the values at nu,
    // so the order matters: AZ before the tangent states (both read z_y at
    // nu), A3 before A2 before A1. The injection terms carry u and Y at the
    // left node, matching the strict fields' initial mass at nu+1.
    if (options.rho_tangent) {
      const double q = -brho * s1 / (s0 * s0);
      AZ_rho = AZ_rho * (1.0 + tc.k * dt) + (tc.m * z_rho.z_y + q) * A1 * dt;
      z_rho = param_tangent_step(model, ParamTangentKind::rho_rate, t, y, z_rho, dt, dw,
                                 path.dWp[nu]);
    }
    if (options.vega_tangent) {
      const double q = -brho * (model.mu.eval(t) - model.r.eval(t)) * s1 / (s0 * s0);
      AZ_vega = AZ_vega * (1.0 + tc.k * dt) + (tc.m * z_vega.z_y + q) * A1 * dt;
      z_vega = param_tangent_step(model, ParamTangentKind::vega_scale, t, y, z_vega, dt,
                                  dw, path.dWp[nu]);
    }
    if (!state_beta) {
      const double e = std::exp(tc.k * dt);
      if (options.third_order) {
        A3 = A3 * e + (3.0 * tc.m * A2 * A1 + tc.p * A1 * A1 * A1) * dt;
      }
      A2 = A2 * e + tc.m * A1 * A1 * dt;
      A1 = A1 * e + un * brho * dt;
    } else {
      const double dwt = rho * dw + rho_perp * path.dWp[nu];
      const double b1 = model.beta_deriv1(y);
      const double b2 = model.beta_deriv2(y);
      const double factor = 1.0 + tc.k * dt + b1 * dwt;
      A2 = A2 * factor + (tc.m * dt + b2 * dwt) * A1 * A1 + 2.0 * un * rho * b1 * A1 * dt;
      A1 = A1 * factor + un * rho * model.beta_at(y) * dt;
    }
  }

  if (options.rho_tangent) f.z_log_rho = z_rho.z_log;
  if (options.vega_tangent) f.z_log_vega = z_vega.z_log;
  if (options.eps_den > 0.0 && std::abs(f.I) < options.eps_den) f.rejected = true;
  return f;
}

}  // namespace svmc
