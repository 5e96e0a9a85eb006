#pragma once

#include <string>

#include "svmc/errors.hpp"

namespace svmc {

enum class PayoffKind { call, put, digital_call };

/// European payoff f(X_T). digital_call pays 1 on {X_T > K}.
struct Payoff {
  PayoffKind kind = PayoffKind::call;
  double strike = 100.0;

  [[nodiscard]] double operator()(double x_T) const {
    switch (kind) {
      case PayoffKind::call:
        return x_T > strike ? x_T - strike : 0.0;
      case PayoffKind::put:
        return x_T < strike ? strike - x_T : 0.0;
      case PayoffKind::digital_call:
        return x_T > strike ? 1.0 : 0.0;
    }
    return 0.0;
  }
};

inline Payoff make_payoff(PayoffKind kind, double strike) {
  if (!(strike > 0.0)) throw ConfigError("payoff strike must be positive");
  return Payoff{kind, strike};
}

inline PayoffKind parse_payoff_kind(const std::string& name) {
  if (name == "call") return PayoffKind::call;
  if (name == "put") return PayoffKind::put;
  if (name == "digital_call") return PayoffKind::digital_call;
  throw ConfigError("unknown payoff '" + name + "'; valid payoffs: call, put, digital_call");
}

inline std::string payoff_kind_name(PayoffKind kind) {
  switch (kind) {
    case PayoffKind::call: return "call";
    case PayoffKind::put: return "put";
    case PayoffKind::digital_call: return "digital_call";
  }
  return "call";
}

}  // namespace svmc
