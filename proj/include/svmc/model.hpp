#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

namespace svmc {

/// Scalar function of the volatility state together with its first three
/// derivatives. Houses sigma, g and the state-dependent vol-of-vol of the
/// extension models. Third derivatives are needed by the third-order tangent
/// fields behind Gamma, so presets supply them analytically.
class SmoothFunction1D {
 public:
  using Fn = std::function<double(double)>;

  SmoothFunction1D() = default;
  SmoothFunction1D(Fn f, Fn d1, Fn d2, Fn d3)
      : f_(std::move(f)), d1_(std::move(d1)), d2_(std::move(d2)), d3_(std::move(d3)) {}

  [[nodiscard]] double eval(double y) const { return f_(y); }
  [[nodiscard]] double deriv1(double y) const { return d1_(y); }
  [[nodiscard]] double deriv2(double y) const { return d2_(y); }
  [[nodiscard]] double deriv3(double y) const { return d3_(y); }

  static SmoothFunction1D constant(double c);
  /// scale * exp(alpha * y)
  static SmoothFunction1D scaled_exp(double scale, double alpha);
  /// a0 + a1 * y
  static SmoothFunction1D affine(double a0, double a1);
  /// scale * sqrt(max(y, floor)); constant below the floor. The clamp keeps
  /// square-root volatilities defined when the Euler state dips negative.
  static SmoothFunction1D scaled_sqrt_floor(double scale, double floor);

 private:
  Fn f_, d1_, d2_, d3_;
};

/// Deterministic curve on [0, T], evaluated pointwise on grid nodes.
/// Constant curves are tagged because the rate tangent behind Rho is only
/// defined for a flat short rate.
class DeterministicCurve {
 public:
  using Fn = std::function<double(double)>;

  DeterministicCurve() : f_([](double) { return 0.0; }), constant_(true) {}
  explicit DeterministicCurve(Fn f) : f_(std::move(f)), constant_(false) {}

  [[nodiscard]] double eval(double t) const { return f_(t); }
  [[nodiscard]] bool is_constant() const { return constant_; }

  static DeterministicCurve constant(double c) {
    DeterministicCurve out([c](double) { return c; });
    out.constant_ = true;
    return out;
  }

 private:
  Fn f_;
  bool constant_ = false;
};

/// Full description of one stochastic-volatility market under the pricing
/// measure:
///
///   dX = r_t X dt + sigma(Y) X dW
///   dY = h(t, Y) dt + beta [rho dW + sqrt(1-rho^2) dW']
///   h(t, y) = g(y) + beta rho a(t, y) + beta sqrt(1-rho^2) b(t)
///   a(t, y) = -(mu_t - r_t) / sigma(y)
///
/// beta is constant in the core model. When beta_fn is present the vol-of-vol
/// is beta_fn(Y) instead (state-dependent extension); those models support
/// first-order Greeks only, so every third-order operation rejects them.
struct ModelSpec {
  double x0 = 100.0;
  double y0 = 0.0;
  DeterministicCurve mu = DeterministicCurve::constant(0.0);
  DeterministicCurve r = DeterministicCurve::constant(0.0);
  SmoothFunction1D sigma;
  SmoothFunction1D g;
  double beta = 0.0;
  double rho = 0.0;
  DeterministicCurve b = DeterministicCurve::constant(0.0);
  std::optional<SmoothFunction1D> beta_fn;

  /// Throws ConfigError if x0 <= 0 or |rho| > 1.
  void validate() const;

  [[nodiscard]] bool state_dependent_beta() const { return beta_fn.has_value(); }
  [[nodiscard]] double beta_at(double y) const {
    return beta_fn ? beta_fn->eval(y) : beta;
  }
  [[nodiscard]] double beta_deriv1(double y) const {
    return beta_fn ? beta_fn->deriv1(y) : 0.0;
  }
  [[nodiscard]] double beta_deriv2(double y) const {
    return beta_fn ? beta_fn->deriv2(y) : 0.0;
  }
};

/// Market price of risk pinned by the asset: a = -(mu_t - r_t)/sigma(y).
/// Throws NumericError when sigma(y) == 0.
double a_process(const ModelSpec& model, double t, double y);

/// Drift of Y under the pricing measure:
/// g(y) + beta(y) rho a(t,y) + beta(y) sqrt(1-rho^2) b(t).
double h_drift(const ModelSpec& model, double t, double y);

/// First three y-derivatives of the drift h(t, .) at y. For constant beta:
///   k = g'(y) + beta rho (mu_t - r_t) sigma'(y)/sigma^2(y)
///   m = dk/dy,  p = d^2k/dy^2
/// which are the propagation coefficients of the first, second and third
/// order tangent fields. State-dependent beta contributes its own chain
/// terms through beta', beta'', beta'''.
struct TangentCoefficients {
  double k = 0.0;
  double m = 0.0;
  double p = 0.0;
};
TangentCoefficients tangent_coefficients(const ModelSpec& model, double t, double y);

/// Named model presets addressable from the CLI. `params` overrides the
/// preset's documented numeric defaults; unknown parameter names are
/// rejected. Valid names: black_scholes, alpha_hypergeometric, linear_sv,
/// heston_like, hull_white_like.
ModelSpec make_preset(const std::string& name,
                      const std::map<std::string, double>& params = {});

/// Parameter names accepted by make_preset for `name`, with default values.
std::map<std::string, double> preset_defaults(const std::string& name);

}  // namespace svmc
