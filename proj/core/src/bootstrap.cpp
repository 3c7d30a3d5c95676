#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "nnc/errors.hpp"
#include "nnc/harness.hpp"
#include "nnc/summation.hpp"

namespace nnc {
namespace {

void check_inputs(std::span<const double> samples, std::size_t B, double level) {
  if (samples.empty()) throw ParameterError("bootstrap needs at least one sample");
  if (B < 1) throw ParameterError("bootstrap needs B >= 1");
  if (samples.size() > 0xffffffffu) throw ParameterError("bootstrap supports at most 2^32 - 1 samples");
  if (!(level > 0.0 && level < 1.0)) throw ParameterError("bootstrap level must lie in (0, 1)");
}

// Linear interpolation between order statistics of sorted `xs`.
double quantile_sorted(const std::vector<double>& xs, double q) {
  const double h = static_cast<double>(xs.size() - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= xs.size()) return xs.back();
  return xs[lo] + (h - static_cast<double>(lo)) * (xs[lo + 1] - xs[lo]);
}

Interval percentile_interval(std::vector<double>& stats, double level) {
  std::sort(stats.begin(), stats.end());
  const double tail = (1.0 - level) / 2.0;
  return {quantile_sorted(stats, tail), quantile_sorted(stats, 1.0 - tail)};
}

// Uniform indices in [0, n) for n < 2^32, two per SplitMix64 output, by
// Lemire's multiply-shift with rejection on each 32-bit half.
class IndexStream {
 public:
  IndexStream(std::uint64_t seed, std::uint32_t n) : state_(seed), n_(n), threshold_((0u - n) % n) {}

  std::uint32_t next() {
    for (;;) {
      if (spare_ == 0) {
        bits_ = mix64(state_);
        state_ += 0x9e3779b97f4a7c15ULL;
        spare_ = 2;
      }
      const auto half = static_cast<std::uint32_t>(bits_);
      bits_ >>= 32;
      --spare_;
      const std::uint64_t m = std::uint64_t{half} * n_;
      if (static_cast<std::uint32_t>(m) >= threshold_) return static_cast<std::uint32_t>(m >> 32);
    }
  }

 private:
  std::uint64_t state_;
  std::uint64_t bits_ = 0;
  int spare_ = 0;
  std::uint32_t n_;
  std::uint32_t threshold_;
};

// Resample moments are accumulated around samples[0] so that constant data
// reproduces its value exactly.
struct ResampleMoments {
  double mean;
  double sd;
};

ResampleMoments resample(std::span<const double> samples, double shift, IndexStream& draw, bool need_sd) {
  const std::size_t n = samples.size();
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double x = samples[draw.next()] - shift;
    sum += x;
    if (need_sd) sum_sq += x * x;
  }
  const double nd = static_cast<double>(n);
  ResampleMoments m{shift + sum / nd, 0.0};
  if (need_sd && n > 1) m.sd = std::sqrt(std::max(0.0, (sum_sq - sum * sum / nd) / (nd - 1.0)));
  return m;
}

}  // namespace

double sample_sd(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double mean = pairwise_sum(xs) / static_cast<double>(xs.size());
  std::vector<double> sq(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) sq[i] = (xs[i] - mean) * (xs[i] - mean);
  return std::sqrt(pairwise_sum(sq) / static_cast<double>(xs.size() - 1));
}

Interval bootstrap_ci(std::span<const double> samples, std::size_t B, double level, Rng& rng,
                      Statistic stat) {
  check_inputs(samples, B, level);
  const bool want_sd = stat == Statistic::StdDev;
  IndexStream draw(rng(), static_cast<std::uint32_t>(samples.size()));
  std::vector<double> stats(B);
  for (auto& s : stats) {
    const ResampleMoments m = resample(samples, samples[0], draw, want_sd);
    s = want_sd ? m.sd : m.mean;
  }
  return percentile_interval(stats, level);
}

BootstrapPair bootstrap_mean_sd(std::span<const double> samples, std::size_t B, double level, Rng& rng) {
  check_inputs(samples, B, level);
  IndexStream draw(rng(), static_cast<std::uint32_t>(samples.size()));
  std::vector<double> means(B);
  std::vector<double> sds(B);
  for (std::size_t b = 0; b < B; ++b) {
    const ResampleMoments m = resample(samples, samples[0], draw, true);
    means[b] = m.mean;
    sds[b] = m.sd;
  }
  return {percentile_interval(means, level), percentile_interval(sds, level)};
}

}  // namespace nnc
