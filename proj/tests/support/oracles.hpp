#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "nnc/estimators.hpp"
#include "nnc/graph.hpp"

// Independent reference computations used by the unit and acceptance tests.
namespace nnc::oracle {

// Exposure probabilities by summing over all 2^(d+1) treatment patterns of a
// node and its d neighbours.
std::array<double, 4> enumerate_exposure(int d, double p);

// Threshold-m exposure probabilities from explicit binomial terms.
std::array<double, 4> binomial_exposure(int d, double p, int m);

// Joint (observed, true) level probabilities for node 0 of an n_v-vertex graph
// whose true neighbours are 1..d, enumerating every treatment vector and every
// edge-flip pattern on the n_v - 1 pairs incident to node 0.
struct JointConfusion {
  double S[2][2];  // rows observed {c11, c10}, columns true {c11, c10}
  double Q[2][2];  // rows observed {c01, c00}, columns true {c01, c00}
};
JointConfusion enumerate_confusion(int n_v, int d, double p, double alpha, double beta);

// Composite Simpson rule with `intervals` (even) panels.
double simpson(const std::function<double(double)>& f, double a, double b, int intervals);

// Poisson rate whose zero-truncated law has the given mean, by Newton's method.
double ztp_rate_newton(double mean);

// E[ht_estimate] over all 2^n assignments, weighted by the Bernoulli(p) product law.
LevelMeans exhaustive_ht_expectation(const Graph& g, const OutcomeTable& y, double p);

struct MeanSe {
  double mean;
  double se;
};
MeanSe mean_se(std::span<const double> xs);

// max_k |F_emp(k) - F(k)| over the integer support of `pmf` (pmf[k] = P(X = k)).
double ks_distance_discrete(std::span<const std::size_t> sample, std::span<const double> pmf);

Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph star_graph(std::size_t leaves);
Graph complete_graph(std::size_t n);

}  // namespace nnc::oracle
