#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/distributions/binomial.hpp>

#include "nnc/errors.hpp"
#include "nnc/exposure.hpp"

namespace nnc {
namespace {

void check_probability(double p) {
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("treatment probability must lie in (0, 1)");
}

ExposureLevel classify(bool treated, bool exposed) {
  if (treated) return exposed ? ExposureLevel::C11 : ExposureLevel::C10;
  return exposed ? ExposureLevel::C01 : ExposureLevel::C00;
}

}  // namespace

std::string_view to_string(ExposureLevel level) noexcept {
  switch (level) {
    case ExposureLevel::C11: return "c11";
    case ExposureLevel::C10: return "c10";
    case ExposureLevel::C01: return "c01";
    case ExposureLevel::C00: return "c00";
  }
  return "?";
}

ExposureLevel parse_level(std::string_view name) {
  for (ExposureLevel level : kAllLevels) {
    if (to_string(level) == name) return level;
  }
  throw ParseError("unknown exposure level `" + std::string(name) + "`");
}

Treatment assign_treatment(std::size_t n, double p, Rng& rng) {
  check_probability(p);
  Treatment t{p, std::vector<bool>(n)};
  for (std::size_t i = 0; i < n; ++i) t.z[i] = rng.bernoulli(p);
  return t;
}

std::size_t treated_neighbors(const Treatment& t, const Graph& g, Vertex i) {
  if (t.size() != g.num_vertices()) throw DimensionError("treatment and graph sizes differ");
  std::size_t count = 0;
  for (Vertex j : g.neighbors(i)) count += t.z[j] ? 1 : 0;
  return count;
}

ExposureLevel exposure_level(const Treatment& t, const Graph& g, Vertex i) {
  if (t.size() != g.num_vertices()) throw DimensionError("treatment and graph sizes differ");
  bool exposed = false;
  for (Vertex j : g.neighbors(i)) {
    if (t.z[j]) {
      exposed = true;
      break;
    }
  }
  return classify(t.z[i], exposed);
}

GeneralizedExposureConfig GeneralizedExposureConfig::absolute(std::size_t m) {
  if (m < 1) throw ParameterError("absolute threshold m must be >= 1");
  return {Absolute{m}};
}

GeneralizedExposureConfig GeneralizedExposureConfig::fractional(double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw ParameterError("fractional threshold q must lie in [0, 1]");
  return {Fractional{q}};
}

std::size_t GeneralizedExposureConfig::threshold(std::size_t degree) const {
  if (const auto* a = std::get_if<Absolute>(&rule)) {
    if (a->m < 1) throw ParameterError("absolute threshold m must be >= 1");
    return a->m;
  }
  const double q = std::get<Fractional>(rule).q;
  const auto m = static_cast<std::size_t>(std::ceil(q * static_cast<double>(degree)));
  return std::max<std::size_t>(1, m);
}

ExposureLevel exposure_level_generalized(const Treatment& t, const Graph& g, Vertex i,
                                         const GeneralizedExposureConfig& cfg) {
  const std::size_t m = cfg.threshold(g.degree(i));
  return classify(t.z[i], treated_neighbors(t, g, i) >= m);
}

ExposureProbabilities exposure_probabilities(double d, double p) {
  check_probability(p);
  if (!(d >= 0.0)) throw ParameterError("degree must be non-negative");
  const double none_treated = std::pow(1.0 - p, d);
  ExposureProbabilities out;
  out[ExposureLevel::C11] = p * (1.0 - none_treated);
  out[ExposureLevel::C10] = p * none_treated;
  out[ExposureLevel::C01] = (1.0 - p) * (1.0 - none_treated);
  out[ExposureLevel::C00] = (1.0 - p) * none_treated;
  return out;
}

ExposureProbabilities exposure_probabilities_generalized(std::size_t d, double p, std::size_t m) {
  check_probability(p);
  if (m < 1) throw ParameterError("threshold m must be >= 1");
  // head = P(Bin(d, p) <= m - 1), tail = P(Bin(d, p) >= m); both summed
  // directly so neither loses precision to 1 - x.
  double head = 0.0;
  double tail = 0.0;
  if (d == 0) {
    head = 1.0;
  } else {
    const boost::math::binomial_distribution<double> law(static_cast<double>(d), p);
    for (std::size_t x = 0; x <= d; ++x) {
      const double mass = boost::math::pdf(law, static_cast<double>(x));
      (x < m ? head : tail) += mass;
    }
  }
  ExposureProbabilities out;
  out[ExposureLevel::C11] = p * tail;
  out[ExposureLevel::C10] = p * head;
  out[ExposureLevel::C01] = (1.0 - p) * tail;
  out[ExposureLevel::C00] = (1.0 - p) * head;
  return out;
}

ConfusionMatrix confusion_matrix(double d, std::size_t n_v, double p, const NoiseParams& noise) {
  check_probability(p);
  noise.validate();
  if (n_v < 1) throw ParameterError("n_v must be >= 1");
  const double max_degree = static_cast<double>(n_v - 1);
  if (!(d >= 0.0 && d <= max_degree)) {
    throw ParameterError("degree " + std::to_string(d) + " outside [0, n_v - 1]");
  }
  const double untreated = std::pow(1.0 - p, d);                             // (1-p)^d
  const double kept_untreated = std::pow(1.0 - (1.0 - noise.beta) * p, d);   // (1-(1-beta)p)^d
  const double no_false = std::pow(1.0 - noise.alpha * p, max_degree - d);   // (1-alpha p)^(n-1-d)

  ConfusionMatrix P;
  P.d = d;
  P.n_v = n_v;
  P.p = p;
  P.noise = noise;
  P.S[0][0] = p * (1.0 - untreated - no_false * (kept_untreated - untreated));
  P.S[0][1] = p * untreated * (1.0 - no_false);
  P.S[1][0] = p * no_false * (kept_untreated - untreated);
  P.S[1][1] = p * untreated * no_false;
  const double arm_ratio = (1.0 - p) / p;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) P.Q[r][c] = arm_ratio * P.S[r][c];
  }
  return P;
}

std::optional<ConfusionInverse> invert_confusion(const ConfusionMatrix& P) {
  const double det = P.determinant();
  if (!(det > kSingularDeterminant)) return std::nullopt;
  ConfusionInverse inv;
  inv.S_inv[0][0] = P.S[1][1] / det;
  inv.S_inv[0][1] = -P.S[0][1] / det;
  inv.S_inv[1][0] = -P.S[1][0] / det;
  inv.S_inv[1][1] = P.S[0][0] / det;
  const double arm_ratio = P.p / (1.0 - P.p);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) inv.Q_inv[r][c] = arm_ratio * inv.S_inv[r][c];
  }
  return inv;
}

}  // namespace nnc
