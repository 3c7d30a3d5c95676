#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "nnc/random.hpp"

namespace nnc {

using Vertex = std::uint32_t;

/// Unordered vertex pair, stored with first < second.
struct Edge {
  Vertex a;
  Vertex b;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Canonical (a < b) form of an unordered pair.
inline Edge make_edge(Vertex u, Vertex v) { return u < v ? Edge{u, v} : Edge{v, u}; }

/// Simple undirected graph over vertices 0..n-1. Immutable after construction.
///
/// Adjacency is kept as one sorted neighbour list per vertex, so degree is the
/// list length and edge lookup is a binary search.
class Graph {
 public:
  Graph() = default;

  /// Empty graph on `n` vertices.
  explicit Graph(std::size_t n);

  /// Builds from an edge list. Duplicates and reversed pairs collapse to one
  /// edge; a self-pair throws ValidationError, an endpoint >= n throws IndexError.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t num_vertices() const noexcept { return adjacency_.size(); }
  std::size_t num_edges() const noexcept { return num_edges_; }
  std::size_t num_pairs() const noexcept;

  std::size_t degree(Vertex v) const { return neighbors(v).size(); }
  std::span<const Vertex> neighbors(Vertex v) const;
  bool has_edge(Vertex u, Vertex v) const;

  std::vector<std::size_t> degrees() const;

  /// All edges in canonical order: by a, then b.
  std::vector<Edge> edges() const;

  /// Fraction of the n(n-1)/2 pairs that are edges; 0 when n < 2.
  double density() const noexcept;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_vertex(Vertex v) const;

  std::vector<std::vector<Vertex>> adjacency_;
  std::size_t num_edges_ = 0;
};

/// |{k : A_ki = A_kj = 1}| for i != j.
std::size_t common_neighbors(const Graph& g, Vertex i, Vertex j);

/// Subgraph induced on vertices of positive degree, relabelled densely in
/// increasing original order. `kept`, when given, receives the original ids.
Graph remove_isolated_vertices(const Graph& g, std::vector<Vertex>* kept = nullptr);

// ---------------------------------------------------------------------------
// Degree laws

struct ZeroTruncatedPoisson {
  double mean;  ///< mean of the truncated law (not of the underlying Poisson)
};

/// Continuous density  C * exp(-rate x) x^-(shape+1)  on [lower, upper].
struct ParetoExpCutoff {
  double rate;
  double shape;
  double lower;
  double upper;
};

using DegreeDistribution = std::variant<ZeroTruncatedPoisson, ParetoExpCutoff>;

/// Underlying Poisson rate mu with mu / (1 - e^-mu) = mean; 0 when mean <= 1.
double zero_truncated_poisson_rate(double mean);

/// C(shape, lower, rate): reciprocal of the integral of the un-normalized density.
double pareto_cutoff_normalization(const ParetoExpCutoff& dist);

/// Mean of the continuous cutoff law, recovered from the normalization through
/// the integration-by-parts identity C = (rate * mean + shape) / boundary term.
double pareto_cutoff_mean(const ParetoExpCutoff& dist);

/// Throws ParameterError when the law is not usable for graphs on `n` vertices.
void validate(const DegreeDistribution& dist, std::size_t n);

/// n i.i.d. degrees, each in [1, n-1].
std::vector<std::size_t> sample_degree_sequence(const DegreeDistribution& dist, std::size_t n,
                                                Rng& rng);

// ---------------------------------------------------------------------------
// Configuration model

struct ConfigurationOptions {
  /// Stub matchings tried before settling for erasure. 1 gives the plain
  /// erased configuration model.
  int max_attempts = 50;
};

struct ConfigurationResult {
  Graph graph;
  std::size_t erased_stubs = 0;  ///< stubs lost to self-loops and multi-edges
  bool parity_repaired = false;
  Vertex repaired_vertex = 0;  ///< meaningful only when parity_repaired
  int attempts = 0;
};

/// Erased configuration model. An odd stub total is repaired by adding one
/// stub to a uniformly chosen vertex whose degree is below n-1. The first
/// simple matching wins; otherwise the attempt with the fewest erased stubs.
ConfigurationResult build_graph_configuration(std::span<const std::size_t> degrees, Rng& rng,
                                              const ConfigurationOptions& opts = {});

// ---------------------------------------------------------------------------
// Labelled ingestion

/// Dense, first-seen-order mapping from string labels to vertex ids.
class LabelIndex {
 public:
  Vertex intern(std::string_view label);
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return labels_.size(); }

 private:
  std::unordered_map<std::string, Vertex> ids_;
  std::vector<std::string> labels_;
};

struct LabeledGraph {
  Graph graph;
  std::vector<std::string> labels;
};

/// Reads `node_a,node_b` CSV. A row with an empty node_b declares an isolated
/// vertex. Vertex ids come from `index`, so several files can share one.
Graph load_edge_list(std::istream& in, LabelIndex& index);
LabeledGraph load_edge_list(std::istream& in);

/// Writes `node_a,node_b` CSV; isolated vertices are written as `label,`.
/// Labels default to decimal vertex ids.
void write_edge_list(std::ostream& out, const Graph& g,
                     std::span<const std::string> labels = {});

struct RoundedContactData {
  std::vector<std::vector<Edge>> rounds;  ///< ordered by round number
  std::vector<std::string> labels;
};

/// Reads `round,node_a,node_b` CSV; round is a positive integer.
RoundedContactData load_rounds(std::istream& in);

/// Edge iff the pair appears in at least `min_count` distinct rounds.
Graph build_true_graph_from_rounds(const RoundedContactData& data, int min_count = 2);

}  // namespace nnc
