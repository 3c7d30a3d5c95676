#pragma once

#include <array>
#include <cstddef>
#include <span>

#include "nnc/estimators.hpp"
#include "nnc/graph.hpp"
#include "nnc/noise.hpp"

namespace nnc {

/// Predicted bias of the noisy Aronow-Samii mean at each level, with the
/// vanishing remainder dropped. c10 / c00 are exact; c11 / c01 are leading-order.
struct BiasPrediction {
  LevelMeans bias;
  static constexpr std::array<bool, 4> has_remainder{true, false, true, false};
};

/// Unit-level bias terms for true degree d and outcomes `y`.
LevelVector bias_theorem1_node(double d, const LevelVector& y, const NoiseParams& noise, double p,
                               std::size_t n_v);

/// Average of the unit terms. `degrees` and `y` must have equal length.
BiasPrediction bias_theorem1(std::span<const std::size_t> degrees, const OutcomeTable& y,
                             const NoiseParams& noise, double p, std::size_t n_v);

/// Moments of (1-p)^D for the observed degree D ~ Bin(n_v-1-d, alpha) + Bin(d, 1-beta).
struct ObservedDegreeMoments {
  double mean_pow = 0.0;      ///< E[(1-p)^D]
  double mean_inv_pow = 0.0;  ///< E[(1-p)^-D]
  double var_pow = 0.0;       ///< Var[(1-p)^D]
};

ObservedDegreeMoments observed_degree_moments(std::size_t d, std::size_t n_v, double p,
                                              const NoiseParams& noise);

/// Numerical proxies for the consistency conditions of the noise-free HT estimator.
struct ConditionDiagnostics {
  /// sum_i 1 / p_i(c_k) / n_v^2. Units with zero degree are skipped for c11 and c01.
  LevelMeans inverse_probability;
  std::size_t zero_degree_units = 0;
  /// #{(i, j), i != j : A_ij = 1 or i, j share a neighbour}, ordered pairs.
  std::size_t dependent_pairs = 0;
  double dependency = 0.0;  ///< dependent_pairs / n_v^2
};

ConditionDiagnostics condition_diagnostics(const Graph& g, double p);

}  // namespace nnc
