#pragma once

#include <cmath>
#include <cstdint>

namespace svmc {

/// Deterministic per-path random stream.
///
/// The stream state is a bijective 64-bit hash of (seed, path_index), so the
/// increment sequence is a pure function of those two values and distinct
/// path indices give well-separated SplitMix64 sequences. Standard normals
/// come from Box-Muller pairs; std::normal_distribution is avoided on
/// purpose because its algorithm is implementation-defined and would break
/// the bit-reproducibility contract.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t path_index)
      : state_(mix64(seed ^ mix64(path_index * 0x9E3779B97F4A7C15ull + 1ull))) {}

  /// Next raw 64-bit word (SplitMix64).
  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller; one uniform pair yields two normals and
  /// the second is cached, so one simulation step (dW, dW') consumes exactly
  /// one pair.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1] so the log is finite.
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * 3.14159265358979323846 * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  static std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 33;
    z *= 0xFF51AFD7ED558CCDull;
    z ^= z >> 33;
    z *= 0xC4CEB9FE1A85EC53ull;
    z ^= z >> 33;
    return z;
  }

  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace svmc
