#include <gtest/gtest.h>

#include <numeric>
#include <vector>

#include "nnc/errors.hpp"
#include "nnc/graph.hpp"
#include "oracles.hpp"

namespace {

using namespace nnc;

void expect_simple_symmetric(const Graph& g) {
  std::size_t degree_sum = 0;
  for (Vertex i = 0; i < g.num_vertices(); ++i) {
    EXPECT_FALSE(g.has_edge(i, i));
    for (Vertex j : g.neighbors(i)) {
      EXPECT_NE(i, j);
      EXPECT_TRUE(g.has_edge(j, i));
    }
    degree_sum += g.degree(i);
  }
  EXPECT_EQ(degree_sum, 2 * g.num_edges());
}

TEST(Graph, FromEdgesDeduplicatesReversedPairs) {
  const std::vector<Edge> e{{0, 1}, {1, 0}, {0, 1}, {1, 2}};
  const Graph g = Graph::from_edges(3, e);
  EXPECT_EQ(g.num_edges(), 2u);
  EXPECT_EQ(g.degrees(), (std::vector<std::size_t>{1, 2, 1}));
  expect_simple_symmetric(g);
}

TEST(Graph, FromEdgesRejectsSelfAndOutOfRange) {
  const std::vector<Edge> self{{1, 1}};
  EXPECT_THROW(Graph::from_edges(3, self), ValidationError);
  const std::vector<Edge> far{{0, 3}};
  EXPECT_THROW(Graph::from_edges(3, far), IndexError);
}

TEST(Graph, DensityAndPairs) {
  const Graph k4 = oracle::complete_graph(4);
  EXPECT_EQ(k4.num_pairs(), 6u);
  EXPECT_DOUBLE_EQ(k4.density(), 1.0);
  EXPECT_DOUBLE_EQ(Graph(1).density(), 0.0);
}

TEST(Graph, EdgesCanonicalOrder) {
  const std::vector<Edge> e{{2, 3}, {0, 2}, {1, 0}};
  const auto edges = Graph::from_edges(4, e).edges();
  EXPECT_EQ(edges, (std::vector<Edge>{{0, 1}, {0, 2}, {2, 3}}));
}

TEST(Graph, NeighborsOutOfRange) {
  const Graph g(3);
  EXPECT_THROW((void)g.neighbors(3), IndexError);
}

TEST(CommonNeighbors, TriangleAnyPairIsOne) {
  const Graph g = oracle::complete_graph(3);
  EXPECT_EQ(common_neighbors(g, 0, 1), 1u);
  EXPECT_EQ(common_neighbors(g, 1, 2), 1u);
  EXPECT_EQ(common_neighbors(g, 0, 2), 1u);
}

TEST(CommonNeighbors, StarCentreAndLeaves) {
  const Graph g = oracle::star_graph(3);
  EXPECT_EQ(common_neighbors(g, 0, 1), 0u);
  EXPECT_EQ(common_neighbors(g, 1, 2), 1u);
}

TEST(CommonNeighbors, Errors) {
  const Graph g = oracle::star_graph(3);
  EXPECT_THROW(common_neighbors(g, 0, 4), IndexError);
  EXPECT_THROW(common_neighbors(g, 1, 1), IndexError);
}

TEST(RemoveIsolated, RelabelsDensely) {
  const std::vector<Edge> e{{1, 3}, {3, 4}};
  std::vector<Vertex> kept;
  const Graph g = remove_isolated_vertices(Graph::from_edges(6, e), &kept);
  EXPECT_EQ(kept, (std::vector<Vertex>{1, 3, 4}));
  EXPECT_EQ(g.num_vertices(), 3u);
  EXPECT_TRUE(g.has_edge(0, 1));
  EXPECT_TRUE(g.has_edge(1, 2));
}

TEST(Configuration, SingleEdge) {
  Rng rng(1);
  const std::vector<std::size_t> d{1, 1};
  const auto r = build_graph_configuration(d, rng);
  EXPECT_EQ(r.graph.num_edges(), 1u);
  EXPECT_TRUE(r.graph.has_edge(0, 1));
  EXPECT_EQ(r.erased_stubs, 0u);
}

TEST(Configuration, Triangle) {
  Rng rng(2);
  const std::vector<std::size_t> d{2, 2, 2};
  const auto r = build_graph_configuration(d, rng);
  EXPECT_EQ(r.graph, oracle::complete_graph(3));
}

TEST(Configuration, StarIsTheOnlyRealization) {
  const std::vector<std::size_t> d{3, 1, 1, 1};
  // Enumerate all 2^6 graphs on 4 vertices for the ones with this sequence.
  std::vector<Edge> pairs;
  for (Vertex i = 0; i < 4; ++i) {
    for (Vertex j = i + 1; j < 4; ++j) pairs.push_back({i, j});
  }
  int matches = 0;
  for (unsigned mask = 0; mask < 64; ++mask) {
    std::vector<Edge> e;
    for (unsigned k = 0; k < 6; ++k) {
      if (mask >> k & 1u) e.push_back(pairs[k]);
    }
    if (Graph::from_edges(4, e).degrees() == d) ++matches;
  }
  ASSERT_EQ(matches, 1);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    EXPECT_EQ(build_graph_configuration(d, rng).graph, oracle::star_graph(3));
  }
}

TEST(Configuration, OddTotalIsRepaired) {
  Rng rng(4);
  const std::vector<std::size_t> d{1, 1, 1};
  const auto r = build_graph_configuration(d, rng);
  EXPECT_TRUE(r.parity_repaired);
  EXPECT_LT(r.repaired_vertex, 3u);
  EXPECT_EQ(r.graph.num_edges(), 2u);
}

TEST(Configuration, RejectsBadDegrees) {
  Rng rng(4);
  const std::vector<std::size_t> zero{0, 1, 1};
  EXPECT_THROW(build_graph_configuration(zero, rng), ParameterError);
  const std::vector<std::size_t> big{3, 1, 1};
  EXPECT_THROW(build_graph_configuration(big, rng), ParameterError);
}

TEST(Configuration, PropertySimpleAndBounded) {
  Rng rng(11);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t n = 20 + rep * 7;
    const auto degrees = sample_degree_sequence(ZeroTruncatedPoisson{5.0}, n, rng);
    ConfigurationOptions plain;
    plain.max_attempts = 1;
    const auto r = build_graph_configuration(degrees, rng, plain);
    expect_simple_symmetric(r.graph);
    const std::size_t total = std::accumulate(degrees.begin(), degrees.end(), std::size_t{0});
    EXPECT_LE(r.graph.num_edges(), (total + 1) / 2);
    EXPECT_EQ(2 * r.graph.num_edges() + r.erased_stubs, total + (r.parity_repaired ? 1 : 0));
    for (Vertex i = 0; i < n; ++i) {
      const std::size_t requested = degrees[i] + (r.parity_repaired && r.repaired_vertex == i ? 1 : 0);
      EXPECT_LE(r.graph.degree(i), requested);
    }
  }
}

TEST(Configuration, DeterministicForSeed) {
  const auto degrees = [] {
    Rng rng(5);
    return sample_degree_sequence(ZeroTruncatedPoisson{4.0}, 200, rng);
  }();
  Rng a(99), b(99);
  EXPECT_EQ(build_graph_configuration(degrees, a).graph, build_graph_configuration(degrees, b).graph);
}

}  // namespace
