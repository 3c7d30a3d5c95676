#pragma once

#include <cstddef>

#include "nnc/graph.hpp"

namespace nnc {

/// Replicate moment statistics over all n(n-1)/2 unordered pairs.
struct MomentStats {
  double u1_hat = 0.0;  ///< edge density of replicate 1
  double u2_hat = 0.0;  ///< half the density of pairs where replicates 1 and 2 disagree
  double u3_hat = 0.0;  ///< a third of the density of pairs present in exactly one of three
};

/// Moments of three replicates (a1, a2, a3). Replicate order matters for u2_hat.
/// Throws DimensionError on mismatched vertex counts or n < 2.
MomentStats moment_stats(const Graph& a1, const Graph& a2, const Graph& a3);

/// Expected moments (u1, u2, u3) under flip rates (alpha, beta) and true density delta.
MomentStats expected_moments(double alpha, double beta, double delta);

struct NoiseFitResult {
  double alpha_hat = 0.0;
  double beta_hat = 0.0;
  double delta_hat = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

struct NoiseFitOptions {
  double alpha0 = -1.0;      ///< starting alpha; negative selects min(u1_hat / 10, u2_hat / 2)
  double eps = 1e-10;
  std::size_t max_iter = 10'000;
};

/// Fixed-point iteration for (alpha, beta, delta) from replicate moments.
///
/// Each sweep updates beta and delta from the current alpha and then alpha
/// from the third moment; iterates are clamped to [1e-12, 1 - 1e-9]. Raw
/// iterates more than 0.05 outside [0, 1] throw DivergenceError, and
/// |u1_hat - alpha| < 1e-12 throws DegeneracyError. Hitting max_iter returns
/// the last iterate with converged = false.
///
/// Identical replicates (u2_hat = u3_hat = 0) are the noiseless fixed point and
/// return (0, 0, u1_hat) without iterating.
NoiseFitResult fit_alpha_beta(const MomentStats& m, const NoiseFitOptions& opts = {});

}  // namespace nnc
