#pragma once

#include <cstddef>
#include <vector>

#include "nnc/graph.hpp"
#include "nnc/random.hpp"

namespace nnc {

/// Constant edge-flip rates: alpha = P(observed edge | non-edge),
/// beta = P(missed edge | edge).
struct NoiseParams {
  double alpha = 0.0;
  double beta = 0.0;

  /// Throws ParameterError unless 0 <= alpha, beta < 1 and alpha + beta < 1.
  void validate() const;
};

/// One observation of `g` under independent edge flips. True edges are visited
/// in canonical order with one uniform draw each, so the set of dropped edges
/// is monotone in beta for a fixed stream. False edges are drawn as a
/// Binomial(#non-edges, alpha) count of distinct uniform non-edges, or pair by
/// pair when alpha is large.
Graph perturb(const Graph& g, const NoiseParams& noise, Rng& rng);

/// `k` conditionally independent observations, replicate r drawn from rng.split(r).
std::vector<Graph> replicate(const Graph& g, const NoiseParams& noise, std::size_t k,
                             const Rng& rng);

}  // namespace nnc
