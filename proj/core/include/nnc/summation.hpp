#pragma once

#include <cstddef>
#include <span>

namespace nnc {

/// Pairwise (cascade) summation with a fixed split order, so the result does
/// not depend on how callers partition work.
inline double pairwise_sum(std::span<const double> xs) {
  constexpr std::size_t kLeaf = 8;
  if (xs.size() <= kLeaf) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

}  // namespace nnc
