#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "nnc/errors.hpp"
#include "nnc/graph.hpp"

namespace nnc {
namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

double boundary_term(const ParetoExpCutoff& d) {
  return std::pow(d.lower, -d.shape) * std::exp(-d.rate * d.lower) -
         std::pow(d.upper, -d.shape) * std::exp(-d.rate * d.upper);
}

}  // namespace

double zero_truncated_poisson_rate(double mean) {
  if (!(mean > 0.0) || !std::isfinite(mean)) {
    throw ParameterError("zero-truncated Poisson mean must be positive and finite");
  }
  if (mean <= 1.0) return 0.0;
  // mu / (1 - e^-mu) is increasing in mu, equals 1 at 0+ and exceeds mu, so
  // the root lies in (0, mean].
  const auto truncated_mean = [](double mu) { return mu / -std::expm1(-mu); };
  double lo = 0.0;
  double hi = mean;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (truncated_mean(mid) < mean) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double pareto_cutoff_normalization(const ParetoExpCutoff& d) {
  const auto density = [&](double x) { return std::exp(-d.rate * x) * std::pow(x, -(d.shape + 1.0)); };
  double error = 0.0;
  const double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      density, d.lower, d.upper, 20, 1e-13, &error);
  if (!(integral > 0.0) || !std::isfinite(integral)) {
    throw ParameterError("Pareto cutoff normalization is not finite and positive");
  }
  return 1.0 / integral;
}

double pareto_cutoff_mean(const ParetoExpCutoff& d) {
  return (pareto_cutoff_normalization(d) * boundary_term(d) - d.shape) / d.rate;
}

void validate(const DegreeDistribution& dist, std::size_t n) {
  if (n < 2) throw ParameterError("degree sequences need n >= 2");
  std::visit(overloaded{
                 [](const ZeroTruncatedPoisson& z) {
                   if (!(z.mean > 0.0) || !std::isfinite(z.mean)) {
                     throw ParameterError("zero-truncated Poisson mean must be positive");
                   }
                 },
                 [n](const ParetoExpCutoff& p) {
                   if (!(p.rate > 0.0)) throw ParameterError("Pareto cutoff rate must be > 0");
                   if (!(p.shape > 0.0)) throw ParameterError("Pareto cutoff shape must be > 0");
                   if (!(p.lower >= 1.0) || !(p.lower < p.upper)) {
                     throw ParameterError("Pareto cutoff needs 1 <= lower < upper");
                   }
                   if (p.upper > static_cast<double>(n - 1)) {
                     throw ParameterError("Pareto cutoff upper bound exceeds n - 1 = " +
                                          std::to_string(n - 1));
                   }
                 },
             },
             dist);
}

std::vector<std::size_t> sample_degree_sequence(const DegreeDistribution& dist, std::size_t n,
                                                Rng& rng) {
  validate(dist, n);
  const std::size_t max_degree = n - 1;
  std::vector<std::size_t> degrees(n);

  std::visit(
      overloaded{
          [&](const ZeroTruncatedPoisson& z) {
            const double mu = zero_truncated_poisson_rate(z.mean);
            if (mu == 0.0) {
              std::fill(degrees.begin(), degrees.end(), std::size_t{1});
              return;
            }
            std::poisson_distribution<long long> poisson(mu);
            for (auto& d : degrees) {
              long long k = 0;
              do {
                k = poisson(rng);
              } while (k == 0 || static_cast<std::size_t>(k) > max_degree);
              d = static_cast<std::size_t>(k);
            }
          },
          [&](const ParetoExpCutoff& p) {
            // Truncated pure Pareto by inverse CDF, thinned by exp(-rate (x - lower)).
            const double lo_pow = std::pow(p.lower, -p.shape);
            const double hi_pow = std::pow(p.upper, -p.shape);
            const auto min_degree =
                static_cast<std::size_t>(std::max(1.0, std::ceil(p.lower)));
            for (auto& d : degrees) {
              double x = 0.0;
              do {
                const double u = rng.uniform();
                x = std::pow(lo_pow - u * (lo_pow - hi_pow), -1.0 / p.shape);
              } while (rng.uniform() >= std::exp(-p.rate * (x - p.lower)));
              const auto rounded = static_cast<std::size_t>(std::llround(x));
              d = std::clamp(rounded, min_degree, max_degree);
            }
          },
      },
      dist);
  return degrees;
}

ConfigurationResult build_graph_configuration(std::span<const std::size_t> degrees, Rng& rng,
                                              const ConfigurationOptions& opts) {
  const std::size_t n = degrees.size();
  if (n == 0) throw ParameterError("degree sequence is empty");
  if (opts.max_attempts < 1) throw ParameterError("max_attempts must be >= 1");
  std::vector<std::size_t> target(degrees.begin(), degrees.end());
  for (std::size_t d : target) {
    if (d < 1 || d > n - 1) {
      throw ParameterError("degree " + std::to_string(d) + " outside [1, " + std::to_string(n - 1) + "]");
    }
  }

  ConfigurationResult result;
  std::size_t total = 0;
  for (std::size_t d : target) total += d;
  if (total % 2 == 1) {
    std::vector<Vertex> eligible;
    for (Vertex v = 0; v < n; ++v) {
      if (target[v] < n - 1) eligible.push_back(v);
    }
    // An odd total implies some degree is below n - 1.
    const Vertex chosen = eligible[rng.below(eligible.size())];
    ++target[chosen];
    ++total;
    result.parity_repaired = true;
    result.repaired_vertex = chosen;
  }

  std::vector<Vertex> stubs;
  stubs.reserve(total);
  for (Vertex v = 0; v < n; ++v) stubs.insert(stubs.end(), target[v], v);

  std::vector<Edge> best_edges;
  std::size_t best_erased = std::numeric_limits<std::size_t>::max();
  std::vector<Edge> edges;
  for (int attempt = 1; attempt <= opts.max_attempts; ++attempt) {
    std::shuffle(stubs.begin(), stubs.end(), rng);
    edges.clear();
    std::size_t loops = 0;
    for (std::size_t k = 0; k + 1 < stubs.size(); k += 2) {
      if (stubs[k] == stubs[k + 1]) {
        ++loops;
      } else {
        edges.push_back(make_edge(stubs[k], stubs[k + 1]));
      }
    }
    std::sort(edges.begin(), edges.end());
    const std::size_t before = edges.size();
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    const std::size_t erased = 2 * (loops + before - edges.size());
    result.attempts = attempt;
    if (erased < best_erased) {
      best_erased = erased;
      best_edges = edges;
    }
    if (erased == 0) break;
  }
  result.graph = Graph::from_edges(n, best_edges);
  result.erased_stubs = best_erased;
  return result;
}

}  // namespace nnc
