#include <cmath>

#include "doctest.h"
#include "svmc/errors.hpp"
#include "svmc/model.hpp"

using namespace svmc;

namespace {

// Central finite differences used to validate analytic derivatives.
template <typename F>
double fd1(F f, double y, double h = 1e-6) {
  return (f(y + h) - f(y - h)) / (2.0 * h);
}
template <typename F>
double fd2(F f, double y, double h = 1e-4) {
  return (f(y + h) - 2.0 * f(y) + f(y - h)) / (h * h);
}

}  // namespace

TEST_CASE("smooth function factories and derivatives") {
  const auto c = SmoothFunction1D::constant(0.7);
  CHECK(c.eval(3.0) == 0.7);
  CHECK(c.deriv1(3.0) == 0.0);
  CHECK(c.deriv2(-1.0) == 0.0);
  CHECK(c.deriv3(0.0) == 0.0);

  const auto e = SmoothFunction1D::scaled_exp(2.0, 0.5);
  const double y = 0.3;
  CHECK(e.eval(y) == doctest::Approx(2.0 * std::exp(0.15)).epsilon(1e-15));
  CHECK(e.deriv1(y) == doctest::Approx(0.5 * e.eval(y)).epsilon(1e-15));
  CHECK(e.deriv2(y) == doctest::Approx(0.25 * e.eval(y)).epsilon(1e-15));
  CHECK(e.deriv3(y) == doctest::Approx(0.125 * e.eval(y)).epsilon(1e-15));

  const auto a = SmoothFunction1D::affine(1.5, -2.0);
  CHECK(a.eval(2.0) == doctest::Approx(-2.5));
  CHECK(a.deriv1(2.0) == -2.0);
  CHECK(a.deriv2(2.0) == 0.0);
  CHECK(a.deriv3(2.0) == 0.0);
}

TEST_CASE("square root volatility clamps below the floor") {
  const auto s = SmoothFunction1D::scaled_sqrt_floor(0.3, 1e-6);
  const double y = 0.04;
  CHECK(s.eval(y) == doctest::Approx(0.3 * 0.2).epsilon(1e-15));
  CHECK(s.deriv1(y) == doctest::Approx(0.5 * 0.3 / 0.2).epsilon(1e-12));
  CHECK(s.deriv1(y) == doctest::Approx(fd1([&](double v) { return s.eval(v); }, y)).epsilon(1e-8));
  CHECK(s.deriv2(y) == doctest::Approx(fd2([&](double v) { return s.eval(v); }, y)).epsilon(1e-5));

  // Below the floor the function is flat, so all derivatives vanish.
  CHECK(s.eval(-0.5) == doctest::Approx(0.3 * std::sqrt(1e-6)).epsilon(1e-15));
  CHECK(s.deriv1(-0.5) == 0.0);
  CHECK(s.deriv2(-0.5) == 0.0);
  CHECK(s.deriv3(-0.5) == 0.0);
}

TEST_CASE("model validation rejects bad spot and correlation") {
  ModelSpec m = make_preset("black_scholes");
  CHECK_NOTHROW(m.validate());
  m.x0 = 0.0;
  CHECK_THROWS_AS(m.validate(), ConfigError);
  m.x0 = 100.0;
  m.rho = 1.5;
  CHECK_THROWS_AS(m.validate(), ConfigError);
}

TEST_CASE("market price of risk and drift") {
  ModelSpec m = make_preset("alpha_hypergeometric", {{"mu", 0.07}, {"r", 0.02}});
  const double y = std::log(0.25);
  // a = -(mu - r)/sigma(y) with sigma = exp(y).
  CHECK(a_process(m, 0.0, y) == doctest::Approx(-0.05 / 0.25).epsilon(1e-14));

  ModelSpec flat = make_preset("black_scholes");
  flat.sigma = SmoothFunction1D::constant(0.0);
  CHECK_THROWS_AS(a_process(flat, 0.0, 0.0), NumericError);

  // h = g + beta rho a + beta sqrt(1-rho^2) b with b == 0 by default.
  const double g = 1.0 - std::exp(y);
  const double expect = g + 0.3 * (-0.5) * (-0.05 / 0.25);
  CHECK(h_drift(m, 0.0, y) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("tangent coefficients vanish for flat volatility") {
  const ModelSpec m = make_preset("black_scholes");
  const auto tc = tangent_coefficients(m, 0.3, 0.1);
  CHECK(tc.k == 0.0);
  CHECK(tc.m == 0.0);
  CHECK(tc.p == 0.0);
}

TEST_CASE("tangent coefficients are the y-derivatives of the drift") {
  // Exercise every term: mu != r turns on the market-price-of-risk chain,
  // b_mpr the free drift component.
  const ModelSpec m = make_preset(
      "alpha_hypergeometric",
      {{"mu", 0.04}, {"r", 0.01}, {"b_mpr", 0.2}, {"alpha", 1.3}, {"b", 0.8}});
  const double t = 0.4;
  auto h = [&](double y) { return h_drift(m, t, y); };
  for (double y : {std::log(0.2), std::log(0.35), -0.4}) {
    const auto tc = tangent_coefficients(m, t, y);
    CHECK(tc.k == doctest::Approx(fd1(h, y)).epsilon(1e-8));
    CHECK(tc.m == doctest::Approx(fd2(h, y)).epsilon(1e-6));
    auto k_of = [&](double v) { return tangent_coefficients(m, t, v).k; };
    CHECK(tc.p == doctest::Approx(fd2(k_of, y)).epsilon(1e-6));
  }
}

TEST_CASE("preset defaults and overrides") {
  const auto bs = preset_defaults("black_scholes");
  CHECK(bs.at("x0") == 100.0);
  CHECK(bs.at("sigma0") == 0.2);
  CHECK(bs.at("r") == 0.05);
  CHECK(bs.at("mu") == 0.05);

  const ModelSpec m = make_preset("black_scholes", {{"sigma0", 0.35}});
  CHECK(m.sigma.eval(0.0) == 0.35);
  CHECK(m.beta == 0.0);

  const ModelSpec ah = make_preset("alpha_hypergeometric");
  CHECK(ah.sigma.eval(ah.y0) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(ah.g.eval(0.0) == doctest::Approx(0.0));  // a - b e^{alpha*0} = 1 - 1
  CHECK(ah.beta == 0.3);
  CHECK(ah.rho == -0.5);
  CHECK_FALSE(ah.state_dependent_beta());

  const ModelSpec lv = make_preset("linear_sv");
  CHECK(lv.state_dependent_beta());
  CHECK(lv.beta_at(0.2) == doctest::Approx(0.5 * 0.2));
  CHECK(lv.beta_deriv1(0.2) == doctest::Approx(0.5));

  const ModelSpec hw = make_preset("hull_white_like");
  CHECK(hw.rho == 0.0);
  CHECK(hw.state_dependent_beta());
}

TEST_CASE("preset errors name the offender") {
  CHECK_THROWS_WITH_AS(make_preset("bs"),
                       doctest::Contains("unknown preset 'bs'"), ConfigError);
  CHECK_THROWS_WITH_AS(make_preset("black_scholes", {{"kappa", 1.0}}),
                       doctest::Contains("unknown parameter 'kappa'"), ConfigError);
  CHECK_THROWS_WITH_AS(make_preset("hull_white_like", {{"rho", 0.1}}),
                       doctest::Contains("pinned to 0"), ConfigError);
}
