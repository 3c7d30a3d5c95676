#pragma once

#include <cstdint>
#include <random>

namespace nnc {

/// SplitMix64 finalizer; a bijective 64-bit avalanche mix.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of child stream `index` under `parent`. Used for per-trial and
/// per-purpose streams so results do not depend on scheduling.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) noexcept {
  return mix64(mix64(parent) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

/// Seeded random stream. Satisfies UniformRandomBitGenerator so it can be
/// handed to <random> distributions and std::shuffle.
class Rng {
 public:
  using engine_type = std::mt19937_64;
  using result_type = engine_type::result_type;

  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix64(seed)) {}

  static constexpr result_type min() { return engine_type::min(); }
  static constexpr result_type max() { return engine_type::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  /// Unbiased uniform integer in [0, n), n > 0 (Lemire's multiply-shift with rejection).
  std::uint64_t below(std::uint64_t n);

  /// Child stream; does not advance this stream.
  Rng split(std::uint64_t index) const { return Rng(derive_seed(seed_, index)); }

  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
  engine_type engine_;
};

}  // namespace nnc
