#include "svmc/model.hpp"

#include <cmath>
#include <sstream>

#include "svmc/errors.hpp"

namespace svmc {

SmoothFunction1D SmoothFunction1D::constant(double c) {
  return {[c](double) { return c; }, [](double) { return 0.0; },
          [](double) { return 0.0; }, [](double) { return 0.0; }};
}

SmoothFunction1D SmoothFunction1D::scaled_exp(double scale, double alpha) {
  return {[scale, alpha](double y) { return scale * std::exp(alpha * y); },
          [scale, alpha](double y) { return scale * alpha * std::exp(alpha * y); },
          [scale, alpha](double y) { return scale * alpha * alpha * std::exp(alpha * y); },
          [scale, alpha](double y) { return scale * alpha * alpha * alpha * std::exp(alpha * y); }};
}

SmoothFunction1D SmoothFunction1D::affine(double a0, double a1) {
  return {[a0, a1](double y) { return a0 + a1 * y; },
          [a1](double) { return a1; },
          [](double) { return 0.0; },
          [](double) { return 0.0; }};
}

SmoothFunction1D SmoothFunction1D::scaled_sqrt_floor(double scale, double floor) {
  return {[scale, floor](double y) { return scale * std::sqrt(y > floor ? y : floor); },
          [scale, floor](double y) {
            return y > floor ? 0.5 * scale / std::sqrt(y) : 0.0;
          },
          [scale, floor](double y) {
            return y > floor ? -0.25 * scale / (y * std::sqrt(y)) : 0.0;
          },
          [scale, floor](double y) {
            return y > floor ? 0.375 * scale / (y * y * std::sqrt(y)) : 0.0;
          }};
}

void ModelSpec::validate() const {
  if (!(x0 > 0.0)) throw ConfigError("ModelSpec: x0 must be positive");
  if (!(std::abs(rho) <= 1.0)) throw ConfigError("ModelSpec: rho must lie in [-1, 1]");
}

double a_process(const ModelSpec& model, double t, double y) {
  const double s = model.sigma.eval(y);
  if (s == 0.0) {
    std::ostringstream msg;
    msg << "singular volatility: sigma(y) = 0 at t = " << t << ", y = " << y;
    throw NumericError(msg.str());
  }
  return -(model.mu.eval(t) - model.r.eval(t)) / s;
}

double h_drift(const ModelSpec& model, double t, double y) {
  const double be = model.beta_at(y);
  const double s = std::sqrt(1.0 - model.rho * model.rho);
  return model.g.eval(y) + be * model.rho * a_process(model, t, y) +
         be * s * model.b.eval(t);
}

TangentCoefficients tangent_coefficients(const ModelSpec& model, double t, double y) {
  const double s0 = model.sigma.eval(y);
  if (s0 == 0.0) {
    std::ostringstream msg;
    msg << "singular volatility: sigma(y) = 0 at t = " << t << ", y = " << y;
    throw NumericError(msg.str());
  }
  const double s1 = model.sigma.deriv1(y);
  const double s2 = model.sigma.deriv2(y);
  const double s3 = model.sigma.deriv3(y);
  const double c = -(model.mu.eval(t) - model.r.eval(t));  // a = c / sigma
  const double a = c / s0;
  // Derivatives of a(t, .) in y.
  const double a1 = -c * s1 / (s0 * s0);
  const double a2 = -c * (s2 / (s0 * s0) - 2.0 * s1 * s1 / (s0 * s0 * s0));
  const double a3 = -c * (s3 / (s0 * s0) - 6.0 * s2 * s1 / (s0 * s0 * s0) +
                          6.0 * s1 * s1 * s1 / (s0 * s0 * s0 * s0));
  double b0 = model.beta, b1 = 0.0, b2 = 0.0, b3 = 0.0;
  if (model.beta_fn) {
    b0 = model.beta_fn->eval(y);
    b1 = model.beta_fn->deriv1(y);
    b2 = model.beta_fn->deriv2(y);
    b3 = model.beta_fn->deriv3(y);
  }
  const double sq = std::sqrt(1.0 - model.rho * model.rho);
  const double bv = model.b.eval(t);
  TangentCoefficients out;
  out.k = model.g.deriv1(y) + model.rho * (b1 * a + b0 * a1) + sq * bv * b1;
  out.m = model.g.deriv2(y) + model.rho * (b2 * a + 2.0 * b1 * a1 + b0 * a2) + sq * bv * b2;
  out.p = model.g.deriv3(y) +
          model.rho * (b3 * a + 3.0 * b2 * a1 + 3.0 * b1 * a2 + b0 * a3) + sq * bv * b3;
  return out;
}

namespace {

std::map<std::string, double> merged_params(const std::string& name,
                                            const std::map<std::string, double>& overrides) {
  std::map<std::string, double> out = preset_defaults(name);
  for (const auto& [key, value] : overrides) {
    auto it = out.find(key);
    if (it == out.end()) {
      std::ostringstream msg;
      msg << "preset " << name << ": unknown parameter '" << key << "'";
      throw ConfigError(msg.str());
    }
    it->second = value;
  }
  return out;
}

}  // namespace

std::map<std::string, double> preset_defaults(const std::string& name) {
  if (name == "black_scholes") {
    return {{"x0", 100.0}, {"y0", 0.0}, {"sigma0", 0.2}, {"r", 0.05}, {"mu", 0.05}};
  }
  if (name == "alpha_hypergeometric") {
    return {{"x0", 100.0}, {"y0", std::log(0.2)}, {"a", 1.0},   {"b", 1.0},
            {"alpha", 1.0}, {"beta", 0.3},         {"rho", -0.5}, {"r", 0.0},
            {"mu", 0.0},    {"b_mpr", 0.0}};
  }
  if (name == "linear_sv") {
    return {{"x0", 100.0}, {"y0", 0.2},  {"kappa", 1.0}, {"theta", 0.2},
            {"xi", 0.5},   {"rho", -0.3}, {"r", 0.0},     {"mu", 0.0},
            {"b_mpr", 0.0}};
  }
  if (name == "heston_like") {
    return {{"x0", 100.0},     {"y0", 0.04}, {"kappa", 1.5}, {"theta", 0.04},
            {"xi", 0.3},       {"rho", -0.7}, {"y_floor", 1e-6}, {"r", 0.0},
            {"mu", 0.0},       {"b_mpr", 0.0}};
  }
  if (name == "hull_white_like") {
    // rho is pinned to zero for this preset and deliberately not a parameter.
    return {{"x0", 100.0}, {"y0", 0.04}, {"mu_y", 0.0},    {"xi", 0.3},
            {"y_floor", 1e-6}, {"r", 0.0},   {"mu", 0.0},  {"b_mpr", 0.0}};
  }
  throw ConfigError("unknown preset '" + name +
                    "'; valid presets: black_scholes, alpha_hypergeometric, "
                    "linear_sv, heston_like, hull_white_like");
}

ModelSpec make_preset(const std::string& name,
                      const std::map<std::string, double>& params) {
  if (name == "hull_white_like" && params.count("rho")) {
    throw ConfigError("preset hull_white_like: rho is pinned to 0 and cannot be overridden");
  }
  const auto p = merged_params(name, params);
  ModelSpec model;
  if (name == "black_scholes") {
    model.x0 = p.at("x0");
    model.y0 = p.at("y0");
    model.sigma = SmoothFunction1D::constant(p.at("sigma0"));
    model.g = SmoothFunction1D::constant(0.0);
    model.beta = 0.0;
    model.rho = 0.0;
    model.r = DeterministicCurve::constant(p.at("r"));
    model.mu = DeterministicCurve::constant(p.at("mu"));
  } else if (name == "alpha_hypergeometric") {
    model.x0 = p.at("x0");
    model.y0 = p.at("y0");
    model.sigma = SmoothFunction1D::scaled_exp(1.0, 1.0);
    const double a = p.at("a"), b = p.at("b"), alpha = p.at("alpha");
    model.g = SmoothFunction1D(
        [a, b, alpha](double y) { return a - b * std::exp(alpha * y); },
        [b, alpha](double y) { return -b * alpha * std::exp(alpha * y); },
        [b, alpha](double y) { return -b * alpha * alpha * std::exp(alpha * y); },
        [b, alpha](double y) { return -b * alpha * alpha * alpha * std::exp(alpha * y); });
    model.beta = p.at("beta");
    model.rho = p.at("rho");
    model.r = DeterministicCurve::constant(p.at("r"));
    model.mu = DeterministicCurve::constant(p.at("mu"));
    model.b = DeterministicCurve::constant(p.at("b_mpr"));
  } else if (name == "linear_sv") {
    model.x0 = p.at("x0");
    model.y0 = p.at("y0");
    model.sigma = SmoothFunction1D::affine(0.0, 1.0);
    model.g = SmoothFunction1D::affine(p.at("kappa") * p.at("theta"), -p.at("kappa"));
    model.beta_fn = SmoothFunction1D::affine(0.0, p.at("xi"));
    model.rho = p.at("rho");
    model.r = DeterministicCurve::constant(p.at("r"));
    model.mu = DeterministicCurve::constant(p.at("mu"));
    model.b = DeterministicCurve::constant(p.at("b_mpr"));
  } else if (name == "heston_like") {
    model.x0 = p.at("x0");
    model.y0 = p.at("y0");
    model.sigma = SmoothFunction1D::scaled_sqrt_floor(1.0, p.at("y_floor"));
    model.g = SmoothFunction1D::affine(p.at("kappa") * p.at("theta"), -p.at("kappa"));
    model.beta_fn = SmoothFunction1D::scaled_sqrt_floor(p.at("xi"), p.at("y_floor"));
    model.rho = p.at("rho");
    model.r = DeterministicCurve::constant(p.at("r"));
    model.mu = DeterministicCurve::constant(p.at("mu"));
    model.b = DeterministicCurve::constant(p.at("b_mpr"));
  } else if (name == "hull_white_like") {
    model.x0 = p.at("x0");
    model.y0 = p.at("y0");
    model.sigma = SmoothFunction1D::scaled_sqrt_floor(1.0, p.at("y_floor"));
    model.g = SmoothFunction1D::affine(0.0, p.at("mu_y"));
    model.beta_fn = SmoothFunction1D::affine(0.0, p.at("xi"));
    model.rho = 0.0;
    model.r = DeterministicCurve::constant(p.at("r"));
    model.mu = DeterministicCurve::constant(p.at("mu"));
    model.b = DeterministicCurve::constant(p.at("b_mpr"));
  }
  model.validate();
  return model;
}

}  // namespace svmc
