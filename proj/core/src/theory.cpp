#include <cmath>
#include <vector>

#include "nnc/errors.hpp"
#include "nnc/exposure.hpp"
#include "nnc/summation.hpp"
#include "nnc/theory.hpp"

namespace nnc {

LevelVector bias_theorem1_node(double d, const LevelVector& y, const NoiseParams& noise, double p,
                               std::size_t n_v) {
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("treatment probability must lie in (0, 1)");
  noise.validate();
  if (!(d >= 0.0 && d <= static_cast<double>(n_v) - 1.0)) {
    throw ParameterError("degree outside [0, n_v - 1]");
  }
  const double tau_treated = y[0] - y[1];  // y(c11) - y(c10)
  const double tau_control = y[2] - y[3];  // y(c01) - y(c00)

  const double no_false = std::pow(1.0 - noise.alpha * p, static_cast<double>(n_v) - 1.0 - d);
  const double numerator = std::pow(1.0 - p, d) * (1.0 - no_false);
  const double denominator = 1.0 - no_false * std::pow(1.0 - (1.0 - noise.beta) * p, d);
  const double lost = numerator == 0.0 ? 0.0 : numerator / denominator;
  const double missed = 1.0 - std::pow(1.0 - noise.beta * p, d);

  return {-lost * tau_treated, missed * tau_treated, -lost * tau_control, missed * tau_control};
}

BiasPrediction bias_theorem1(std::span<const std::size_t> degrees, const OutcomeTable& y,
                             const NoiseParams& noise, double p, std::size_t n_v) {
  if (degrees.size() != y.size()) throw DimensionError("degrees and outcome table differ in length");
  BiasPrediction out;
  if (degrees.empty()) return out;
  std::vector<double> column(degrees.size());
  std::vector<LevelVector> terms(degrees.size());
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    terms[i] = bias_theorem1_node(static_cast<double>(degrees[i]), y.row(i), noise, p, n_v);
  }
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t i = 0; i < terms.size(); ++i) column[i] = terms[i][k];
    out.bias.values[k] = pairwise_sum(column) / static_cast<double>(terms.size());
  }
  return out;
}

ObservedDegreeMoments observed_degree_moments(std::size_t d, std::size_t n_v, double p,
                                              const NoiseParams& noise) {
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("treatment probability must lie in (0, 1)");
  noise.validate();
  if (n_v < 1 || d > n_v - 1) throw ParameterError("degree outside [0, n_v - 1]");
  const double non_nbrs = static_cast<double>(n_v - 1 - d);
  const double nbrs = static_cast<double>(d);
  const double a = noise.alpha;
  const double keep = 1.0 - noise.beta;

  ObservedDegreeMoments m;
  m.mean_pow = std::pow(1.0 - a * p, non_nbrs) * std::pow(1.0 - keep * p, nbrs);
  m.mean_inv_pow = std::pow(1.0 + a * p / (1.0 - p), non_nbrs) * std::pow(1.0 + keep * p / (1.0 - p), nbrs);
  const double second = std::pow(1.0 - a * p * (2.0 - p), non_nbrs) * std::pow(1.0 - keep * p * (2.0 - p), nbrs);
  m.var_pow = std::max(0.0, second - m.mean_pow * m.mean_pow);
  return m;
}

ConditionDiagnostics condition_diagnostics(const Graph& g, double p) {
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("treatment probability must lie in (0, 1)");
  const std::size_t n = g.num_vertices();
  ConditionDiagnostics out;
  if (n == 0) return out;
  const double n2 = static_cast<double>(n) * static_cast<double>(n);

  std::array<std::vector<double>, 4> inv;
  for (Vertex i = 0; i < n; ++i) {
    const std::size_t d = g.degree(i);
    if (d == 0) ++out.zero_degree_units;
    const ExposureProbabilities probs = exposure_probabilities(static_cast<double>(d), p);
    for (ExposureLevel level : kAllLevels) {
      if (probs[level] > 0.0) inv[index(level)].push_back(1.0 / probs[level]);
    }
  }
  for (ExposureLevel level : kAllLevels) {
    out.inverse_probability[level] = pairwise_sum(inv[index(level)]) / n2;
  }

  // Vertices within two hops of i, marked with i as a stamp.
  std::vector<Vertex> stamp(n, static_cast<Vertex>(n));
  for (Vertex i = 0; i < n; ++i) {
    std::size_t reach = 0;
    stamp[i] = i;
    for (Vertex j : g.neighbors(i)) {
      if (stamp[j] != i) {
        stamp[j] = i;
        ++reach;
      }
      for (Vertex k : g.neighbors(j)) {
        if (stamp[k] != i) {
          stamp[k] = i;
          ++reach;
        }
      }
    }
    out.dependent_pairs += reach;
  }
  out.dependency = static_cast<double>(out.dependent_pairs) / n2;
  return out;
}

}  // namespace nnc
