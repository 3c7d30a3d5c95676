#include <algorithm>
#include <cmath>
#include <string>

#include "nnc/errors.hpp"
#include "nnc/estimators.hpp"
#include "nnc/summation.hpp"

namespace nnc {
namespace {

void check_sizes(const Graph& g, const Treatment& t, const RealizedOutcomes& r) {
  if (t.size() != g.num_vertices() || r.size() != g.num_vertices() || r.level.size() != r.size()) {
    throw DimensionError("graph, treatment and outcomes disagree on the number of units");
  }
}

// Column-wise pairwise mean of per-unit terms.
LevelMeans average_terms(const std::vector<LevelVector>& terms) {
  LevelMeans out;
  if (terms.empty()) return out;
  std::vector<double> column(terms.size());
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t i = 0; i < terms.size(); ++i) column[i] = terms[i][k];
    out.values[k] = pairwise_sum(column) / static_cast<double>(terms.size());
  }
  return out;
}

}  // namespace

OutcomeTable::OutcomeTable(std::vector<LevelVector> rows) : rows_(std::move(rows)) {
  for (const auto& row : rows_) {
    for (double y : row) {
      if (!std::isfinite(y)) throw ParameterError("potential outcomes must be finite");
      bound_ = std::max(bound_, std::abs(y));
    }
  }
}

OutcomeTable OutcomeTable::constant(std::size_t n, const LevelVector& values) {
  return OutcomeTable(std::vector<LevelVector>(n, values));
}

LevelMeans truth(const OutcomeTable& y) {
  std::vector<LevelVector> rows(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) rows[i] = y.row(i);
  return average_terms(rows);
}

RealizedOutcomes realize_outcomes(const Graph& g_true, const Treatment& t, const OutcomeTable& y) {
  const std::size_t n = g_true.num_vertices();
  if (t.size() != n || y.size() != n) {
    throw DimensionError("graph, treatment and outcome table disagree on the number of units");
  }
  RealizedOutcomes r;
  r.outcome.resize(n);
  r.level.resize(n);
  for (Vertex i = 0; i < n; ++i) {
    r.level[i] = exposure_level(t, g_true, i);
    r.outcome[i] = y(i, r.level[i]);
  }
  return r;
}

LevelVector as_node_term(const Graph& g, const Treatment& t, const RealizedOutcomes& r, Vertex i) {
  LevelVector term{};
  const ExposureLevel level = exposure_level(t, g, i);
  const double prob = exposure_probabilities(static_cast<double>(g.degree(i)), t.p)[level];
  if (prob > 0.0) term[index(level)] = r.outcome[i] / prob;
  return term;
}

LevelMeans ht_estimate(const Graph& g, const Treatment& t, const RealizedOutcomes& r, HtMode mode) {
  check_sizes(g, t, r);
  std::vector<LevelVector> terms(g.num_vertices());
  for (Vertex i = 0; i < g.num_vertices(); ++i) {
    const ExposureLevel level = exposure_level(t, g, i);
    const double prob = exposure_probabilities(static_cast<double>(g.degree(i)), t.p)[level];
    if (prob > 0.0) {
      terms[i][index(level)] = r.outcome[i] / prob;
    } else if (mode == HtMode::TrueGraph) {
      throw ContractViolation("unit " + std::to_string(i) + " attained " +
                              std::string(to_string(level)) + " with exposure probability 0");
    }
  }
  return average_terms(terms);
}

double degree_estimate(double d_obs, double alpha_hat, double beta_hat, std::size_t n_v) {
  if (!(alpha_hat + beta_hat < 1.0)) throw ParameterError("alpha_hat + beta_hat must be < 1");
  return (d_obs - static_cast<double>(n_v - 1) * alpha_hat) / (1.0 - alpha_hat - beta_hat);
}

LevelVector observed_outcome_vector(ExposureLevel observed, double outcome) {
  LevelVector y{};
  y[index(observed)] = outcome;
  return y;
}

std::optional<LevelVector> mme_node(const LevelVector& y_tilde, double d_hat, double alpha_hat,
                                    double beta_hat, double p, std::size_t n_v) {
  const ConfusionMatrix P = confusion_matrix(d_hat, n_v, p, NoiseParams{alpha_hat, beta_hat});
  const auto inv = invert_confusion(P);
  if (!inv) return std::nullopt;
  const auto& S = inv->S_inv;
  const auto& Q = inv->Q_inv;
  return LevelVector{
      S[0][0] * y_tilde[0] + S[0][1] * y_tilde[1],
      S[1][0] * y_tilde[0] + S[1][1] * y_tilde[1],
      Q[0][0] * y_tilde[2] + Q[0][1] * y_tilde[3],
      Q[1][0] * y_tilde[2] + Q[1][1] * y_tilde[3],
  };
}

MixingRule MixingRule::sparse_fallback() { return {Mode::SparseFallback, 1.0, 0.0}; }

MixingRule MixingRule::order_of_magnitude(double p) {
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("treatment probability must lie in (0, 1)");
  // log10(a) in [-1/2, 1/2)  <=>  b = floor(log10(1/p) + 1/2).
  const double b = std::floor(std::log10(1.0 / p) + 0.5);
  const double scale = std::pow(10.0, b);
  const double root10 = std::sqrt(10.0);
  return {Mode::OrderOfMagnitude, scale / root10, root10 * scale};
}

bool MixingRule::use_mme(double d_hat) const noexcept {
  if (mode == Mode::SparseFallback) return d_hat >= c1;
  return d_hat >= c1 && d_hat < c2;
}

MmeResult mme_estimate(const Graph& g_obs, const Treatment& t, const RealizedOutcomes& r,
                       const NoiseParams& noise_hat, const MixingRule& rule) {
  check_sizes(g_obs, t, r);
  noise_hat.validate();
  const std::size_t n = g_obs.num_vertices();
  const double max_degree = n == 0 ? 0.0 : static_cast<double>(n - 1);
  MmeResult result;
  std::vector<LevelVector> terms(n);
  for (Vertex i = 0; i < n; ++i) {
    const double d_obs = static_cast<double>(g_obs.degree(i));
    const double d_hat =
        std::clamp(degree_estimate(d_obs, noise_hat.alpha, noise_hat.beta, n), 0.0, max_degree);
    if (rule.use_mme(d_hat)) {
      const LevelVector y_tilde = observed_outcome_vector(exposure_level(t, g_obs, i), r.outcome[i]);
      if (auto corrected = mme_node(y_tilde, d_hat, noise_hat.alpha, noise_hat.beta, t.p, n)) {
        terms[i] = *corrected;
        ++result.mme_units;
        continue;
      }
      ++result.singular_fallbacks;
    } else {
      ++result.as_units;
    }
    terms[i] = as_node_term(g_obs, t, r, i);
  }
  result.means = average_terms(terms);
  return result;
}

double contrast(const LevelMeans& m, ExposureLevel k, ExposureLevel l) noexcept {
  return m[k] - m[l];
}

}  // namespace nnc
