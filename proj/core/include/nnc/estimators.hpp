#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "nnc/exposure.hpp"
#include "nnc/graph.hpp"
#include "nnc/noise.hpp"

namespace nnc {

using LevelVector = std::array<double, 4>;

/// Potential outcomes y_i(c11), y_i(c10), y_i(c01), y_i(c00), one row per unit.
class OutcomeTable {
 public:
  OutcomeTable() = default;
  /// Throws ParameterError on a non-finite entry.
  explicit OutcomeTable(std::vector<LevelVector> rows);

  /// Every unit shares the same four outcomes.
  static OutcomeTable constant(std::size_t n, const LevelVector& values);

  std::size_t size() const noexcept { return rows_.size(); }
  const LevelVector& row(std::size_t i) const { return rows_.at(i); }
  double operator()(std::size_t i, ExposureLevel level) const { return rows_.at(i)[index(level)]; }

  /// max |y_i(c_k)|.
  double bound() const noexcept { return bound_; }

 private:
  std::vector<LevelVector> rows_;
  double bound_ = 0.0;
};

struct LevelMeans {
  LevelVector values{};

  double operator[](ExposureLevel level) const noexcept { return values[index(level)]; }
  double& operator[](ExposureLevel level) noexcept { return values[index(level)]; }
};

/// Column means of the outcome table: the estimands ybar(c_k).
LevelMeans truth(const OutcomeTable& y);

/// Observed outcome and true exposure level per unit for one assignment.
struct RealizedOutcomes {
  std::vector<double> outcome;
  std::vector<ExposureLevel> level;

  std::size_t size() const noexcept { return outcome.size(); }
};

RealizedOutcomes realize_outcomes(const Graph& g_true, const Treatment& t, const OutcomeTable& y);

enum class HtMode {
  /// Levels and probabilities from the true graph; a zero probability at an
  /// attained level throws ContractViolation.
  TrueGraph,
  /// Levels and probabilities from an observed graph, outcomes from the true
  /// exposure; units with zero observed probability contribute 0.
  Observed,
};

/// Horvitz-Thompson / Aronow-Samii means: (1/n) sum_i 1{level_i = c_k} y_i / p_i(c_k).
LevelMeans ht_estimate(const Graph& g, const Treatment& t, const RealizedOutcomes& r,
                       HtMode mode = HtMode::TrueGraph);

/// Unit i's Aronow-Samii term on graph g (one non-zero component at most).
LevelVector as_node_term(const Graph& g, const Treatment& t, const RealizedOutcomes& r, Vertex i);

/// Moment-corrected degree (d_obs - (n_v - 1) alpha) / (1 - alpha - beta). May be negative.
double degree_estimate(double d_obs, double alpha_hat, double beta_hat, std::size_t n_v);

/// P^-1(d_hat, alpha, beta) * y_tilde, or nullopt when the confusion matrix is singular.
std::optional<LevelVector> mme_node(const LevelVector& y_tilde, double d_hat, double alpha_hat,
                                    double beta_hat, double p, std::size_t n_v);

/// y_tilde_i: the observed outcome placed at the unit's observed exposure level.
LevelVector observed_outcome_vector(ExposureLevel observed, double outcome);

/// Which units receive the moment correction; the rest keep their A&S term.
struct MixingRule {
  enum class Mode { OrderOfMagnitude, SparseFallback };

  Mode mode = Mode::SparseFallback;
  double c1 = 1.0;  ///< lower threshold (inclusive)
  double c2 = 0.0;  ///< upper threshold (exclusive); unused for SparseFallback

  /// d_hat >= 1.
  static MixingRule sparse_fallback();
  /// Writing 1/p = a * 10^b with a in [1/sqrt(10), sqrt(10)):
  /// c1 = 10^b / sqrt(10), c2 = sqrt(10) * 10^b.
  static MixingRule order_of_magnitude(double p);

  bool use_mme(double d_hat) const noexcept;
};

struct MmeResult {
  LevelMeans means;
  std::size_t mme_units = 0;          ///< units corrected with P^-1
  std::size_t as_units = 0;           ///< units outside the rule's band
  std::size_t singular_fallbacks = 0; ///< units in the band whose P was singular
};

/// Mixed method-of-moments estimate on an observed graph. Negative d_hat is
/// clamped to 0 (and values above n_v - 1 to n_v - 1) before the rule is applied.
MmeResult mme_estimate(const Graph& g_obs, const Treatment& t, const RealizedOutcomes& r,
                       const NoiseParams& noise_hat, const MixingRule& rule = MixingRule::sparse_fallback());

/// m(c_k) - m(c_l).
double contrast(const LevelMeans& m, ExposureLevel k, ExposureLevel l) noexcept;

}  // namespace nnc
