#include <algorithm>
#include <string>

#include "nnc/errors.hpp"
#include "nnc/graph.hpp"

namespace nnc {

Graph::Graph(std::size_t n) : adjacency_(n) {}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  Graph g(n);
  for (const Edge& e : edges) {
    if (e.a >= n || e.b >= n) {
      throw IndexError("edge (" + std::to_string(e.a) + ", " + std::to_string(e.b) +
                       ") references a vertex outside [0, " + std::to_string(n) + ")");
    }
    if (e.a == e.b) {
      throw ValidationError("self-edge on vertex " + std::to_string(e.a));
    }
    g.adjacency_[e.a].push_back(e.b);
    g.adjacency_[e.b].push_back(e.a);
  }
  std::size_t twice_edges = 0;
  for (auto& nbrs : g.adjacency_) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    nbrs.shrink_to_fit();
    twice_edges += nbrs.size();
  }
  g.num_edges_ = twice_edges / 2;
  return g;
}

std::size_t Graph::num_pairs() const noexcept {
  const std::size_t n = num_vertices();
  return n < 2 ? 0 : n * (n - 1) / 2;
}

void Graph::check_vertex(Vertex v) const {
  if (v >= adjacency_.size()) {
    throw IndexError("vertex " + std::to_string(v) + " out of range [0, " +
                     std::to_string(adjacency_.size()) + ")");
  }
}

std::span<const Vertex> Graph::neighbors(Vertex v) const {
  check_vertex(v);
  return adjacency_[v];
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  check_vertex(u);
  check_vertex(v);
  if (adjacency_[u].size() > adjacency_[v].size()) std::swap(u, v);
  return std::binary_search(adjacency_[u].begin(), adjacency_[u].end(), v);
}

std::vector<std::size_t> Graph::degrees() const {
  std::vector<std::size_t> d(adjacency_.size());
  for (std::size_t i = 0; i < adjacency_.size(); ++i) d[i] = adjacency_[i].size();
  return d;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges_);
  for (Vertex a = 0; a < adjacency_.size(); ++a) {
    const auto& nbrs = adjacency_[a];
    for (auto it = std::upper_bound(nbrs.begin(), nbrs.end(), a); it != nbrs.end(); ++it) {
      out.push_back({a, *it});
    }
  }
  return out;
}

double Graph::density() const noexcept {
  const std::size_t pairs = num_pairs();
  return pairs == 0 ? 0.0 : static_cast<double>(num_edges_) / static_cast<double>(pairs);
}

std::size_t common_neighbors(const Graph& g, Vertex i, Vertex j) {
  if (i == j) throw IndexError("common_neighbors requires distinct vertices");
  auto a = g.neighbors(i);
  auto b = g.neighbors(j);
  std::size_t count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

Graph remove_isolated_vertices(const Graph& g, std::vector<Vertex>* kept) {
  std::vector<Vertex> new_id(g.num_vertices(), 0);
  std::vector<Vertex> originals;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (g.degree(v) > 0) {
      new_id[v] = static_cast<Vertex>(originals.size());
      originals.push_back(v);
    }
  }
  std::vector<Edge> edges = g.edges();
  for (Edge& e : edges) e = {new_id[e.a], new_id[e.b]};
  Graph out = Graph::from_edges(originals.size(), edges);
  if (kept) *kept = std::move(originals);
  return out;
}

}  // namespace nnc
