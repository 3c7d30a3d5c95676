#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_set>

#include "nnc/errors.hpp"
#include "nnc/noise.hpp"

namespace nnc {
namespace {

// Above this alpha the rejection sampler for false edges stops paying off.
constexpr double kDenseAlpha = 0.05;

// Position of pair (a, b), a < b, in the row-major enumeration of the upper triangle.
std::uint64_t pair_rank(std::uint64_t n, std::uint64_t a, std::uint64_t b) {
  return a * (2 * n - a - 1) / 2 + (b - a - 1);
}

Edge pair_unrank(std::uint64_t n, std::uint64_t rank) {
  // Row a holds n - 1 - a pairs; solve for the row, then fix rounding.
  const double nd = static_cast<double>(n);
  auto a = static_cast<std::uint64_t>(
      std::floor((2 * nd - 1 - std::sqrt((2 * nd - 1) * (2 * nd - 1) - 8.0 * static_cast<double>(rank))) / 2));
  while (a > 0 && pair_rank(n, a, a + 1) > rank) --a;
  while (a + 2 < n && pair_rank(n, a + 1, a + 2) <= rank) ++a;
  const std::uint64_t b = rank - pair_rank(n, a, a + 1) + a + 1;
  return {static_cast<Vertex>(a), static_cast<Vertex>(b)};
}

}  // namespace

void NoiseParams::validate() const {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw ParameterError("alpha must lie in [0, 1)");
  if (!(beta >= 0.0 && beta < 1.0)) throw ParameterError("beta must lie in [0, 1)");
  if (!(alpha + beta < 1.0)) throw ParameterError("alpha + beta must be < 1");
}

Graph perturb(const Graph& g, const NoiseParams& noise, Rng& rng) {
  if (!(noise.alpha >= 0.0 && noise.alpha <= 1.0 && noise.beta >= 0.0 && noise.beta <= 1.0)) {
    throw ParameterError("flip rates must lie in [0, 1]");
  }
  const std::uint64_t n = g.num_vertices();
  std::vector<Edge> observed;
  observed.reserve(g.num_edges());

  const std::vector<Edge> truth = g.edges();
  for (const Edge& e : truth) {
    if (rng.uniform() >= noise.beta) observed.push_back(e);
  }

  const std::uint64_t pairs = g.num_pairs();
  const std::uint64_t non_edges = pairs - g.num_edges();
  if (noise.alpha > 0.0 && non_edges > 0) {
    if (noise.alpha >= kDenseAlpha) {
      for (Vertex a = 0; a < n; ++a) {
        for (Vertex b = a + 1; b < n; ++b) {
          if (g.has_edge(a, b)) continue;
          if (rng.uniform() < noise.alpha) observed.push_back({a, b});
        }
      }
    } else {
      std::binomial_distribution<std::uint64_t> count_dist(non_edges, noise.alpha);
      const std::uint64_t count = count_dist(rng);
      std::unordered_set<std::uint64_t> chosen;
      chosen.reserve(count * 2);
      std::vector<std::uint64_t> ranks;
      ranks.reserve(count);
      while (ranks.size() < count) {
        const std::uint64_t rank = rng.below(pairs);
        const Edge e = pair_unrank(n, rank);
        if (g.has_edge(e.a, e.b) || !chosen.insert(rank).second) continue;
        ranks.push_back(rank);
      }
      for (std::uint64_t rank : ranks) observed.push_back(pair_unrank(n, rank));
    }
  }
  return Graph::from_edges(n, observed);
}

std::vector<Graph> replicate(const Graph& g, const NoiseParams& noise, std::size_t k,
                             const Rng& rng) {
  if (k < 1) throw ParameterError("replicate count must be >= 1");
  std::vector<Graph> out;
  out.reserve(k);
  for (std::size_t r = 0; r < k; ++r) {
    Rng stream = rng.split(r);
    out.push_back(perturb(g, noise, stream));
  }
  return out;
}

}  // namespace nnc
