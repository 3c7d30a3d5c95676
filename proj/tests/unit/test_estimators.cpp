#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "nnc/errors.hpp"
#include "nnc/estimators.hpp"
#include "nnc/noise.hpp"
#include "oracles.hpp"

namespace {

using namespace nnc;
using L = ExposureLevel;

const LevelVector kDilated{10.0, 7.0, 5.0, 1.0};

Graph ten_node_graph() {
  const std::vector<Edge> e{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {5, 6}, {6, 7},
                            {7, 8}, {8, 9}, {9, 5}, {0, 5}, {2, 7}, {3, 9}};
  return Graph::from_edges(10, e);
}

OutcomeTable heterogeneous_outcomes(std::size_t n) {
  std::vector<LevelVector> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = static_cast<double>(i);
    rows[i] = {10.0 + 0.7 * s, 7.0 - 0.3 * s, 5.0 + std::sin(s), 1.0 + 0.1 * s * s};
  }
  return OutcomeTable(rows);
}

TEST(OutcomeTable, TruthAndBound) {
  const auto y = OutcomeTable::constant(7, kDilated);
  const LevelMeans m = truth(y);
  for (L level : kAllLevels) EXPECT_DOUBLE_EQ(m[level], kDilated[index(level)]);
  EXPECT_DOUBLE_EQ(y.bound(), 10.0);
  EXPECT_THROW(OutcomeTable({{1.0, NAN, 0.0, 0.0}}), ParameterError);
}

TEST(OutcomeTable, TruthIsColumnMean) {
  const auto y = heterogeneous_outcomes(10);
  const LevelMeans m = truth(y);
  for (std::size_t k = 0; k < 4; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < 10; ++i) s += y.row(i)[k];
    EXPECT_NEAR(m.values[k], s / 10.0, 1e-13);
  }
}

TEST(RealizeOutcomes, Cases) {
  const Graph g = Graph::from_edges(3, std::vector<Edge>{{0, 1}});
  const auto y = OutcomeTable::constant(3, kDilated);
  const auto none = realize_outcomes(g, Treatment{0.1, {false, false, false}}, y);
  EXPECT_EQ(none.outcome[2], 1.0);
  EXPECT_EQ(none.level[2], L::C00);
  const auto alone = realize_outcomes(g, Treatment{0.1, {true, false, false}}, y);
  EXPECT_EQ(alone.outcome[0], 7.0);
  EXPECT_EQ(alone.outcome[1], 5.0);
  EXPECT_THROW(realize_outcomes(g, Treatment{0.1, {true}}, y), DimensionError);
}

TEST(HtEstimate, ExhaustiveExpectationIsTruth) {
  const Graph g = ten_node_graph();
  const auto y = heterogeneous_outcomes(10);
  for (double p : {0.1, 0.3, 0.5}) {
    const LevelMeans expected = oracle::exhaustive_ht_expectation(g, y, p);
    const LevelMeans target = truth(y);
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(expected.values[k], target.values[k], 1e-12);
  }
}

TEST(HtEstimate, SingleIsolatedUnit) {
  const Graph g(1);
  const auto y = OutcomeTable::constant(1, kDilated);
  const Treatment t{0.25, {true}};
  const LevelMeans m = ht_estimate(g, t, realize_outcomes(g, t, y));
  EXPECT_DOUBLE_EQ(m[L::C10], 7.0 / 0.25);
  EXPECT_EQ(m[L::C11], 0.0);
  EXPECT_EQ(m[L::C00], 0.0);
}

TEST(HtEstimate, ObservedModeOnTrueGraphMatches) {
  Rng rng(1);
  const auto degrees = sample_degree_sequence(ZeroTruncatedPoisson{5.0}, 200, rng);
  const Graph g = build_graph_configuration(degrees, rng).graph;
  const auto y = heterogeneous_outcomes(200);
  const auto t = assign_treatment(200, 0.1, rng);
  const auto r = realize_outcomes(g, t, y);
  const Graph obs = perturb(g, {0.0, 0.0}, rng);
  EXPECT_EQ(ht_estimate(g, t, r, HtMode::TrueGraph).values, ht_estimate(obs, t, r, HtMode::Observed).values);
}

TEST(HtEstimate, ZeroProbabilityAtAttainedLevel) {
  // (1/2)^1101 underflows to zero, so the centre's c00 probability is 0.
  const Graph g = oracle::star_graph(1100);
  const Treatment t{0.5, std::vector<bool>(1101, false)};
  const auto r = realize_outcomes(g, t, OutcomeTable::constant(1101, kDilated));
  EXPECT_THROW(ht_estimate(g, t, r, HtMode::TrueGraph), ContractViolation);
  EXPECT_NO_THROW(ht_estimate(g, t, r, HtMode::Observed));
}

TEST(DegreeEstimate, Examples) {
  EXPECT_DOUBLE_EQ(degree_estimate(7.0, 0.0, 0.0, 50), 7.0);
  EXPECT_NEAR(degree_estimate(10.0, 0.01, 0.1, 100), (10.0 - 0.99) / 0.89, 1e-12);
  EXPECT_NEAR(degree_estimate(10.0, 0.01, 0.1, 100), 10.1236, 5e-5);
  EXPECT_NEAR(degree_estimate(0.99, 0.01, 0.1, 100), 0.0, 1e-15);
  EXPECT_LT(degree_estimate(0.0, 0.01, 0.1, 100), 0.0);
  EXPECT_THROW(degree_estimate(3.0, 0.5, 0.5, 10), ParameterError);
}

TEST(MmeNode, NoiselessRecoversAsTerms) {
  const double p = 0.1;
  const double d = 6.0;
  const auto pr = exposure_probabilities(d, p);
  for (L level : kAllLevels) {
    const auto out = mme_node(observed_outcome_vector(level, 3.0), d, 0.0, 0.0, p, 40);
    ASSERT_TRUE(out.has_value());
    for (L k : kAllLevels) {
      const double expected = k == level ? 3.0 / pr[level] : 0.0;
      EXPECT_NEAR((*out)[index(k)], expected, 1e-12 * std::abs(expected) + 1e-15);
    }
  }
}

TEST(MmeNode, Linearity) {
  const auto out = mme_node({0.0, 0.0, 0.0, 0.0}, 5.0, 0.01, 0.1, 0.1, 100);
  ASSERT_TRUE(out.has_value());
  for (double v : *out) EXPECT_EQ(v, 0.0);
  EXPECT_FALSE(mme_node({1.0, 0.0, 0.0, 0.0}, 0.0, 0.01, 0.1, 0.1, 100).has_value());
}

// Simulates node 0 with true degree 8 in a 200-vertex graph: its treatment, its
// neighbours' treatments and the noise on its 199 incident pairs. The mean of
// the corrected vector must equal the unit's potential outcomes.
TEST(MmeNode, UnbiasedOverTreatmentAndNoise) {
  const std::size_t n_v = 200;
  const int d = 8;
  const double p = 0.1, alpha = 0.005, beta = 0.1;
  const LevelVector y{10.0, 7.0, 5.0, 1.0};
  Rng rng(2024);
  const int draws = 100000;
  std::array<std::vector<double>, 4> samples;
  for (auto& s : samples) s.reserve(draws);
  for (int k = 0; k < draws; ++k) {
    const bool self = rng.bernoulli(p);
    bool true_exposed = false;
    bool obs_exposed = false;
    for (std::size_t v = 1; v < n_v; ++v) {
      const bool treated = rng.bernoulli(p);
      const bool true_edge = static_cast<int>(v) <= d;
      const bool observed = rng.bernoulli(true_edge ? 1.0 - beta : alpha);
      true_exposed |= treated && true_edge;
      obs_exposed |= treated && observed;
    }
    const auto level = [](bool z, bool e) { return z ? (e ? L::C11 : L::C10) : (e ? L::C01 : L::C00); };
    const double outcome = y[index(level(self, true_exposed))];
    const auto out = mme_node(observed_outcome_vector(level(self, obs_exposed), outcome), d, alpha, beta, p, n_v);
    ASSERT_TRUE(out.has_value());
    for (std::size_t c = 0; c < 4; ++c) samples[c].push_back((*out)[c]);
  }
  for (std::size_t c = 0; c < 4; ++c) {
    const auto ms = oracle::mean_se(samples[c]);
    EXPECT_NEAR(ms.mean, y[c], 3.0 * ms.se) << "component " << c;
  }
}

TEST(MixingRule, OrderOfMagnitudeThresholds) {
  const auto r = MixingRule::order_of_magnitude(0.1);
  EXPECT_NEAR(r.c1, 3.1623, 5e-5);
  EXPECT_NEAR(r.c2, 31.623, 5e-4);
  EXPECT_TRUE(r.use_mme(r.c1));
  EXPECT_FALSE(r.use_mme(r.c2));
  EXPECT_FALSE(r.use_mme(3.0));
  EXPECT_TRUE(r.use_mme(10.0));
  EXPECT_THROW(MixingRule::order_of_magnitude(0.0), ParameterError);
}

TEST(MixingRule, InverseProbabilityInsideBand) {
  Rng rng(3);
  for (int k = 0; k < 2000; ++k) {
    const double p = std::pow(10.0, -4.0 * rng.uniform()) * 0.999;
    const auto r = MixingRule::order_of_magnitude(p);
    EXPECT_LE(r.c1, 1.0 / p);
    EXPECT_LT(1.0 / p, r.c2);
    EXPECT_NEAR(r.c2 / r.c1, 10.0, 1e-12);
  }
}

TEST(MixingRule, SparseFallbackBoundary) {
  const auto r = MixingRule::sparse_fallback();
  EXPECT_TRUE(r.use_mme(1.0));
  EXPECT_FALSE(r.use_mme(0.999));
  EXPECT_TRUE(r.use_mme(1e6));
}

struct Scenario {
  Graph g;
  Treatment t;
  RealizedOutcomes r;
};

Scenario random_scenario(std::uint64_t seed, std::size_t n, double mean) {
  Rng rng(seed);
  const auto degrees = sample_degree_sequence(ZeroTruncatedPoisson{mean}, n, rng);
  Graph g = build_graph_configuration(degrees, rng).graph;
  Treatment t = assign_treatment(n, 0.1, rng);
  RealizedOutcomes r = realize_outcomes(g, t, heterogeneous_outcomes(n));
  return {std::move(g), std::move(t), std::move(r)};
}

TEST(MmeEstimate, NoiselessEqualsHt) {
  const auto s = random_scenario(4, 300, 6.0);
  const LevelMeans ht = ht_estimate(s.g, s.t, s.r, HtMode::TrueGraph);
  for (const auto& rule : {MixingRule::sparse_fallback(), MixingRule::order_of_magnitude(0.1)}) {
    const auto m = mme_estimate(s.g, s.t, s.r, {0.0, 0.0}, rule);
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(m.means.values[k], ht.values[k], 1e-12 * std::abs(ht.values[k]));
    EXPECT_EQ(m.mme_units + m.as_units + m.singular_fallbacks, 300u);
  }
}

TEST(MmeEstimate, BelowThresholdUnitsKeepTheirAsTermExactly) {
  // Every vertex has observed degree 1, so d_hat < 1 everywhere.
  std::vector<Edge> matching;
  for (Vertex i = 0; i < 50; i += 2) matching.push_back({i, i + 1});
  const Graph g = Graph::from_edges(50, matching);
  Rng rng(5);
  const auto t = assign_treatment(50, 0.3, rng);
  const auto r = realize_outcomes(g, t, heterogeneous_outcomes(50));
  const auto m = mme_estimate(g, t, r, {0.01, 0.1});
  EXPECT_EQ(m.as_units, 50u);
  EXPECT_EQ(m.mme_units, 0u);
  EXPECT_EQ(m.means.values, ht_estimate(g, t, r, HtMode::Observed).values);
}

TEST(MmeEstimate, SingularUnitsFallBack) {
  const auto s = random_scenario(6, 100, 3.0);
  MixingRule everyone{MixingRule::Mode::SparseFallback, 0.0, 0.0};
  // Units whose d_hat clamps to 0 have a singular confusion matrix.
  const auto m = mme_estimate(s.g, s.t, s.r, {0.03, 0.1}, everyone);
  EXPECT_GT(m.singular_fallbacks, 0u);
  EXPECT_EQ(m.mme_units + m.singular_fallbacks, 100u);
}

TEST(Contrast, Properties) {
  const LevelMeans m{kDilated};
  EXPECT_EQ(contrast(m, L::C11, L::C11), 0.0);
  EXPECT_EQ(contrast(m, L::C11, L::C00), 9.0);
  EXPECT_EQ(contrast(m, L::C10, L::C00), 6.0);
  EXPECT_EQ(contrast(m, L::C01, L::C00), 4.0);
  EXPECT_EQ(contrast(m, L::C10, L::C01), -contrast(m, L::C01, L::C10));
}

}  // namespace
