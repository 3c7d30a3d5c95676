#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nnc/estimators.hpp"
#include "nnc/graph.hpp"
#include "nnc/noise.hpp"
#include "nnc/noise_fit.hpp"
#include "nnc/random.hpp"

namespace nnc {

// ---------------------------------------------------------------------------
// Bootstrap

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

enum class Statistic { Mean, StdDev };

/// Sample standard deviation (n - 1 denominator); 0 for fewer than two samples.
double sample_sd(std::span<const double> xs);

/// Percentile bootstrap interval of `stat` over B resamples with replacement.
/// Quantiles use linear interpolation between order statistics. Resample
/// indices come from a SplitMix64 stream seeded by one draw of `rng`.
Interval bootstrap_ci(std::span<const double> samples, std::size_t B, double level, Rng& rng,
                      Statistic stat = Statistic::Mean);

/// Both intervals from one set of resamples.
struct BootstrapPair {
  Interval mean;
  Interval sd;
};
BootstrapPair bootstrap_mean_sd(std::span<const double> samples, std::size_t B, double level, Rng& rng);

// ---------------------------------------------------------------------------
// Configuration

enum class EstimatorKind : std::size_t { HtTrue = 0, AsNoisy = 1, Mme = 2 };
inline constexpr std::array<EstimatorKind, 3> kAllEstimators{EstimatorKind::HtTrue, EstimatorKind::AsNoisy,
                                                             EstimatorKind::Mme};
std::string_view to_string(EstimatorKind e) noexcept;
EstimatorKind parse_estimator(std::string_view name);

struct GeneratedGraph {
  DegreeDistribution distribution = ZeroTruncatedPoisson{10.0};
  std::size_t n = 500;
  std::uint64_t seed = 1;
  /// Drop vertices left isolated by erasure, so every unit can reach every level.
  bool drop_isolated = true;
};
struct EdgeListFile {
  std::filesystem::path path;
};
struct RoundsFile {
  std::filesystem::path path;
  int min_count = 2;
};
/// A graph handed over directly (library use; not expressible in JSON).
struct InlineGraph {
  Graph graph;
};
using GraphSource = std::variant<GeneratedGraph, EdgeListFile, RoundsFile, InlineGraph>;

struct DilatedOutcomes {
  LevelVector values{10.0, 7.0, 5.0, 1.0};
};
/// CSV `node,c11,c10,c01,c00`, one row per vertex label.
struct OutcomeFile {
  std::filesystem::path path;
};
struct InlineOutcomes {
  OutcomeTable table;
};
using OutcomeSource = std::variant<DilatedOutcomes, OutcomeFile, InlineOutcomes>;

struct ExperimentConfig {
  GraphSource graph = GeneratedGraph{};
  /// Redraw the generated graph in every trial (generator sources only).
  bool regenerate_graph = false;
  NoiseParams noise{0.005, 0.1};
  /// Use `noise` in the correction instead of fitting it from three replicates.
  bool noise_known = false;
  double p = 0.1;
  OutcomeSource outcomes = DilatedOutcomes{};
  std::size_t trials = 10'000;
  std::size_t bootstrap_B = 1'000;
  double bootstrap_level = 0.95;
  MixingRule::Mode mixing = MixingRule::Mode::SparseFallback;
  std::uint64_t master_seed = 20240601;
  std::vector<EstimatorKind> estimators{kAllEstimators.begin(), kAllEstimators.end()};
  /// Worker threads; 0 uses std::thread::hardware_concurrency().
  unsigned threads = 0;
  /// Failed trials above this fraction abort the run.
  double max_failure_rate = 0.01;

  /// Throws ParameterError on an invalid configuration.
  void validate() const;
};

/// Parses the JSON config. Relative paths are resolved against `base_dir`.
ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {});
/// JSON echo of the config (inline sources are summarised, not serialised).
std::string config_to_json(const ExperimentConfig& cfg);

/// Applies NNC_SEED (decimal or 0x-prefixed integer) to master_seed when set.
void apply_env_overrides(ExperimentConfig& cfg);

// ---------------------------------------------------------------------------
// Running

/// True graph, outcome table and estimands resolved from a config.
struct Scenario {
  Graph graph;
  std::vector<std::string> labels;
  OutcomeTable outcomes;
  LevelMeans truth;
};

Scenario resolve_scenario(const ExperimentConfig& cfg);

struct TrialRecord {
  std::size_t index = 0;
  bool failed = false;
  std::string failure;
  /// Indexed by EstimatorKind; entries for estimators not requested stay zero.
  std::array<LevelMeans, 3> estimates{};
  std::optional<NoiseFitResult> fit;
  NoiseParams noise_used;
  std::size_t mme_units = 0;
  std::size_t as_units = 0;
  std::size_t singular_fallbacks = 0;
};

/// Streams of trial t: seed derive_seed(master_seed, t); replicates from
/// split(0), treatment from split(1), regenerated graph from split(2).
TrialRecord run_trial(const ExperimentConfig& cfg, const Scenario& scenario, std::size_t t);

/// Trials [first, first + count), run on cfg.threads workers. The result is
/// ordered by trial index whatever the scheduling.
std::vector<TrialRecord> run_trials(const ExperimentConfig& cfg, const Scenario& scenario,
                                    std::size_t first, std::size_t count);

struct LevelSummary {
  EstimatorKind estimator = EstimatorKind::HtTrue;
  ExposureLevel level = ExposureLevel::C11;
  double truth = 0.0;
  double mean_estimate = 0.0;
  double bias = 0.0;
  Interval bias_ci;
  double sd = 0.0;
  Interval sd_ci;
  std::size_t n_trials = 0;
  std::size_t n_failed = 0;
};

struct RunMetadata {
  std::size_t trials_requested = 0;
  std::size_t trials_used = 0;
  std::size_t trials_failed = 0;
  std::size_t fits_attempted = 0;
  std::size_t fits_converged = 0;
  double mean_alpha_hat = 0.0;
  double mean_beta_hat = 0.0;
  double mean_mme_units = 0.0;
  double mean_as_units = 0.0;
  double mean_singular_fallbacks = 0.0;
  std::size_t n_vertices = 0;
  std::size_t n_edges = 0;
  std::vector<std::string> failure_samples;
};

struct EstimateSummary {
  std::vector<LevelSummary> rows;  ///< estimator-major, levels in c11, c10, c01, c00 order
  RunMetadata metadata;

  const LevelSummary& at(EstimatorKind e, ExposureLevel level) const;
};

/// Aggregates records in trial-index order. Throws RunError when the failed
/// fraction exceeds cfg.max_failure_rate or no trial succeeded.
EstimateSummary summarize(const ExperimentConfig& cfg, const Scenario& scenario,
                          std::span<const TrialRecord> records);

EstimateSummary run_experiment(const ExperimentConfig& cfg);

// ---------------------------------------------------------------------------
// Output

inline constexpr std::string_view kResultsHeader =
    "estimator,level,truth,mean_estimate,bias,bias_ci_lo,bias_ci_hi,sd,sd_ci_lo,sd_ci_hi,n_trials,n_failed";

void emit_results(const EstimateSummary& s, std::ostream& csv);
void emit_sidecar(const EstimateSummary& s, const ExperimentConfig& cfg, std::ostream& json);

/// Writes `csv_path` and `csv_path` + ".json". Throws RunError naming the path on I/O failure.
void emit_results(const EstimateSummary& s, const ExperimentConfig& cfg,
                  const std::filesystem::path& csv_path);

/// Shortest round-trip decimal form.
std::string format_double(double x);

}  // namespace nnc
