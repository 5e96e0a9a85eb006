#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "svmc/grid.hpp"
#include "svmc/model.hpp"
#include "svmc/payoff.hpp"

namespace svmc {

enum class Greek { price, delta, gamma, rho, vega };
enum class Variant { corrected, paper_verbatim };

std::string greek_name(Greek g);
Greek parse_greek(const std::string& name);
std::string variant_name(Variant v);
Variant parse_variant(const std::string& name);

/// One Monte Carlo sensitivity estimate. Rho and Vega only exist in the
/// corrected variant; price is reported under the corrected label.
struct GreekEstimate {
  Greek greek = Greek::price;
  Variant variant = Variant::corrected;
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t n_paths = 0;
  std::uint64_t n_rejected = 0;
  bool discounting = true;
};

/// Deterministic weight curve u on [0, T]. All named curves integrate to T,
/// like the default u == 1, so the Black-Scholes weights keep their familiar
/// normalization.
enum class WeightKind { constant, front_loaded, back_loaded };

WeightKind parse_weight_kind(const std::string& name);
std::string weight_kind_name(WeightKind kind);

/// u evaluated at the left grid nodes t_0..t_{n-1}:
///   constant: 1; front_loaded: 2(1 - t/T); back_loaded: 2t/T.
std::vector<double> weight_nodes(WeightKind kind, const TimeGrid& grid);

/// Sample mean and standard error (sample std with ddof = 1, divided by
/// sqrt(N)). Summation is a single ascending pass so the result does not
/// depend on how paths were distributed over workers. Throws NumericError
/// on an empty sample.
std::pair<double, double> mc_reduce(const std::vector<double>& per_path_values);

/// exp(-quad_sum(r)) over the grid; 1 when discounting is off at call sites.
double discount_factor(const ModelSpec& model, const TimeGrid& grid);

struct EstimatorOptions {
  bool discounting = true;
  /// Reject paths with |I| below this. Negative means the default
  /// 1e-8 * |sigma(y0)| * T.
  double eps_den = -1.0;
  std::size_t workers = 1;
};

double resolve_eps_den(const ModelSpec& model, const TimeGrid& grid, double eps_den);

/// Runs one simulation pass and evaluates every requested (greek, variant)
/// estimator on the shared paths. Rho/Vega ignore the variant list (corrected
/// only). Throws ConfigError for unsupported combinations (gamma or rho/vega
/// with state-dependent vol-of-vol, gamma with n > 512) and NumericError when
/// more than 0.1% of paths hit the degenerate-denominator guard.
std::vector<GreekEstimate> run_estimators(const ModelSpec& model, const Payoff& payoff,
                                          const TimeGrid& grid, std::size_t n_paths,
                                          std::uint64_t seed, WeightKind u,
                                          const std::vector<Greek>& greeks,
                                          const std::vector<Variant>& variants,
                                          const EstimatorOptions& options = {});

GreekEstimate estimate_price(const ModelSpec& model, const Payoff& payoff,
                             const TimeGrid& grid, std::size_t n_paths, std::uint64_t seed,
                             const EstimatorOptions& options = {});
GreekEstimate estimate_delta(const ModelSpec& model, const Payoff& payoff,
                             const TimeGrid& grid, std::size_t n_paths, std::uint64_t seed,
                             WeightKind u, Variant variant,
                             const EstimatorOptions& options = {});
GreekEstimate estimate_gamma(const ModelSpec& model, const Payoff& payoff,
                             const TimeGrid& grid, std::size_t n_paths, std::uint64_t seed,
                             WeightKind u, Variant variant,
                             const EstimatorOptions& options = {});
GreekEstimate estimate_rho(const ModelSpec& model, const Payoff& payoff,
                           const TimeGrid& grid, std::size_t n_paths, std::uint64_t seed,
                           WeightKind u, const EstimatorOptions& options = {});
GreekEstimate estimate_vega(const ModelSpec& model, const Payoff& payoff,
                            const TimeGrid& grid, std::size_t n_paths, std::uint64_t seed,
                            WeightKind u, const EstimatorOptions& options = {});

}  // namespace svmc
