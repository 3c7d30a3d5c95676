#include <algorithm>
#include <cmath>
#include <string>

#include "nnc/errors.hpp"
#include "nnc/noise_fit.hpp"

namespace nnc {
namespace {

constexpr double kClampLow = 1e-12;
constexpr double kClampHigh = 1.0 - 1e-9;
constexpr double kOvershoot = 0.05;
constexpr double kDegenerate = 1e-12;

double clamp_iterate(double value, const char* name, std::size_t iteration) {
  if (!std::isfinite(value) || value < -kOvershoot || value > 1.0 + kOvershoot) {
    throw DivergenceError(std::string(name) + " iterate " + std::to_string(value) +
                          " left [0, 1] at iteration " + std::to_string(iteration));
  }
  return std::clamp(value, kClampLow, kClampHigh);
}

// Sorted-edge merge over three replicates: counts of pairs in exactly one
// replicate, and of pairs where the first two disagree.
struct PairCounts {
  std::size_t edges1 = 0;
  std::size_t diff12 = 0;
  std::size_t exactly_one = 0;
};

PairCounts count_pairs(const Graph& a1, const Graph& a2, const Graph& a3) {
  const auto e1 = a1.edges();
  const auto e2 = a2.edges();
  const auto e3 = a3.edges();
  PairCounts c;
  c.edges1 = e1.size();
  std::size_t i = 0, j = 0, k = 0;
  while (i < e1.size() || j < e2.size() || k < e3.size()) {
    Edge next{~Vertex{0}, ~Vertex{0}};
    if (i < e1.size()) next = std::min(next, e1[i]);
    if (j < e2.size()) next = std::min(next, e2[j]);
    if (k < e3.size()) next = std::min(next, e3[k]);
    const bool in1 = i < e1.size() && e1[i] == next;
    const bool in2 = j < e2.size() && e2[j] == next;
    const bool in3 = k < e3.size() && e3[k] == next;
    c.diff12 += in1 != in2 ? 1 : 0;
    c.exactly_one += (int{in1} + int{in2} + int{in3}) == 1 ? 1 : 0;
    i += in1;
    j += in2;
    k += in3;
  }
  return c;
}

}  // namespace

MomentStats moment_stats(const Graph& a1, const Graph& a2, const Graph& a3) {
  const std::size_t n = a1.num_vertices();
  if (a2.num_vertices() != n || a3.num_vertices() != n) {
    throw DimensionError("replicates disagree on the number of vertices");
  }
  if (n < 2) throw DimensionError("moment statistics need n >= 2");
  const PairCounts c = count_pairs(a1, a2, a3);
  const double nn1 = static_cast<double>(n) * static_cast<double>(n - 1);
  return {
      2.0 * static_cast<double>(c.edges1) / nn1,
      static_cast<double>(c.diff12) / nn1,
      2.0 * static_cast<double>(c.exactly_one) / (3.0 * nn1),
  };
}

MomentStats expected_moments(double alpha, double beta, double delta) {
  return {
      (1.0 - delta) * alpha + delta * (1.0 - beta),
      (1.0 - delta) * alpha * (1.0 - alpha) + delta * beta * (1.0 - beta),
      (1.0 - delta) * alpha * (1.0 - alpha) * (1.0 - alpha) + delta * beta * beta * (1.0 - beta),
  };
}

NoiseFitResult fit_alpha_beta(const MomentStats& m, const NoiseFitOptions& opts) {
  if (!(opts.eps > 0.0)) throw ParameterError("eps must be positive");
  const double u1 = m.u1_hat;
  const double u2 = m.u2_hat;
  const double u3 = m.u3_hat;

  NoiseFitResult fit;
  if (u2 == 0.0 && u3 == 0.0) {
    fit.delta_hat = u1;
    fit.converged = true;
    return fit;
  }

  double start = opts.alpha0;
  if (start < 0.0) start = u2 > 0.0 ? std::min(u1 / 10.0, u2 / 2.0) : u1 / 10.0;
  if (!(start > 0.0 && start < u1)) {
    throw ParameterError("alpha0 must lie in (0, u1_hat)");
  }

  double alpha = start;
  double beta = 0.0;
  double delta = 0.0;
  for (std::size_t it = 1; it <= opts.max_iter; ++it) {
    const double alpha0 = alpha;
    if (std::abs(u1 - alpha0) < kDegenerate) {
      throw DegeneracyError("u1_hat - alpha vanished at iteration " + std::to_string(it));
    }
    beta = clamp_iterate((u2 - alpha0 + u1 * alpha0) / (u1 - alpha0), "beta", it);
    const double delta_den = u1 - u2 - 2.0 * u1 * alpha0 + alpha0 * alpha0;
    delta = clamp_iterate((u1 - alpha0) * (u1 - alpha0) / delta_den, "delta", it);
    alpha = clamp_iterate(
        (u3 - delta * beta * beta * (1.0 - beta)) / ((1.0 - delta) * (1.0 - alpha0) * (1.0 - alpha0)),
        "alpha", it);
    fit.iterations = it;
    if (std::abs(alpha - alpha0) <= opts.eps) {
      fit.converged = true;
      break;
    }
  }
  fit.alpha_hat = alpha;
  fit.beta_hat = beta;
  fit.delta_hat = delta;
  return fit;
}

}  // namespace nnc
