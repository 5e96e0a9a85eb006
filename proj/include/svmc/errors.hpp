#pragma once

#include <stdexcept>
#include <string>

namespace svmc {

/// Process exit codes used by the CLI. One code per error class so CI can
/// tell an estimator regression from a configuration mistake.
namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config = 2;
inline constexpr int numeric = 3;
inline constexpr int oracle_gate = 4;
inline constexpr int io = 5;
}  // namespace exit_code

/// Invalid configuration: bad key, bad value, violated invariant,
/// unsupported greek/model combination.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Numeric failure during simulation or estimation: singular volatility,
/// non-finite state, excess degenerate-denominator rejections.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Failure to read or write a report destination.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace svmc
