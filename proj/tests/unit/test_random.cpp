#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "nnc/random.hpp"

namespace {

using nnc::Rng;

TEST(Random, SameSeedSameStream) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
}

TEST(Random, DerivedSeedsAreDistinct) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t t = 0; t < 10000; ++t) seen.insert(nnc::derive_seed(7, t));
  EXPECT_EQ(seen.size(), 10000u);
  EXPECT_NE(nnc::derive_seed(1, 0), nnc::derive_seed(0, 1));
}

TEST(Random, SplitDoesNotAdvanceParent) {
  Rng a(9), b(9);
  (void)a.split(3);
  EXPECT_EQ(a(), b());
  EXPECT_EQ(a.split(3)(), b.split(3)());
}

TEST(Random, UniformInUnitInterval) {
  Rng rng(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Random, BelowIsUniform) {
  Rng rng(3);
  const std::uint64_t n = 7;
  std::vector<int> counts(n, 0);
  const int draws = 700000;
  for (int i = 0; i < draws; ++i) {
    const auto k = rng.below(n);
    ASSERT_LT(k, n);
    ++counts[k];
  }
  // Chi-square with 6 degrees of freedom; 0.999 quantile is 22.46.
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - draws / 7.0) * (c - draws / 7.0) / (draws / 7.0);
  EXPECT_LT(chi2, 22.46);
}

TEST(Random, BelowOneIsZero) {
  Rng rng(5);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(rng.below(1), 0u);
}

}  // namespace
