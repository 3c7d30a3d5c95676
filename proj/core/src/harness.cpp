#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <string>
#include <thread>
#include <unordered_map>

#include "nnc/errors.hpp"
#include "nnc/harness.hpp"
#include "nnc/summation.hpp"

namespace nnc {
namespace {

constexpr std::uint64_t kBootstrapStream = 0xb0075742a9ULL;

bool wants(const ExperimentConfig& cfg, EstimatorKind e) {
  return std::find(cfg.estimators.begin(), cfg.estimators.end(), e) != cfg.estimators.end();
}

Graph generate_graph(const GeneratedGraph& spec, Rng& rng) {
  const auto degrees = sample_degree_sequence(spec.distribution, spec.n, rng);
  Graph g = build_graph_configuration(degrees, rng).graph;
  return spec.drop_isolated ? remove_isolated_vertices(g) : g;
}

std::vector<std::string> index_labels(std::size_t n) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
  return labels;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw RunError("cannot open `" + path.string() + "`");
  return in;
}

OutcomeTable load_outcome_file(const std::filesystem::path& path, const std::vector<std::string>& labels) {
  auto in = open_input(path);
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError(path.string() + ": missing header", 1);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "node,c11,c10,c01,c00") {
    throw ParseError(path.string() + ": expected header `node,c11,c10,c01,c00`", 1);
  }
  std::unordered_map<std::string, std::size_t> id;
  for (std::size_t i = 0; i < labels.size(); ++i) id.emplace(labels[i], i);
  std::vector<LevelVector> rows(labels.size());
  std::vector<bool> seen(labels.size(), false);
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t comma; (comma = line.find(',', start)) != std::string::npos; start = comma + 1) {
      fields.push_back(line.substr(start, comma - start));
    }
    fields.push_back(line.substr(start));
    if (fields.size() != 5) throw ParseError(path.string() + ": expected 5 fields", line_no);
    const auto it = id.find(fields[0]);
    if (it == id.end()) throw ParseError(path.string() + ": unknown node `" + fields[0] + "`", line_no);
    for (std::size_t k = 0; k < 4; ++k) {
      try {
        std::size_t used = 0;
        rows[it->second][k] = std::stod(fields[k + 1], &used);
        if (used != fields[k + 1].size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw ParseError(path.string() + ": bad number `" + fields[k + 1] + "`", line_no);
      }
    }
    seen[it->second] = true;
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw ParseError(path.string() + ": no outcomes for node `" + labels[i] + "`");
  }
  return OutcomeTable(std::move(rows));
}

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

}  // namespace

std::string_view to_string(EstimatorKind e) noexcept {
  switch (e) {
    case EstimatorKind::HtTrue: return "HT_true";
    case EstimatorKind::AsNoisy: return "AS_noisy";
    case EstimatorKind::Mme: return "MME";
  }
  return "?";
}

EstimatorKind parse_estimator(std::string_view name) {
  for (EstimatorKind e : kAllEstimators) {
    if (to_string(e) == name) return e;
  }
  throw ParseError("unknown estimator `" + std::string(name) + "`");
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw ParameterError("trials must be >= 1");
  if (bootstrap_B < 1) throw ParameterError("bootstrap_B must be >= 1");
  if (!(bootstrap_level > 0.0 && bootstrap_level < 1.0)) {
    throw ParameterError("bootstrap_level must lie in (0, 1)");
  }
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("p must lie in (0, 1)");
  noise.validate();
  if (!(max_failure_rate >= 0.0 && max_failure_rate <= 1.0)) {
    throw ParameterError("max_failure_rate must lie in [0, 1]");
  }
  if (regenerate_graph) {
    if (!std::holds_alternative<GeneratedGraph>(graph)) {
      throw ParameterError("regenerate_graph needs a generator graph source");
    }
    if (!std::holds_alternative<DilatedOutcomes>(outcomes)) {
      throw ParameterError("regenerate_graph needs constant (dilated) outcomes");
    }
  }
  if (const auto* gen = std::get_if<GeneratedGraph>(&graph)) nnc::validate(gen->distribution, gen->n);
}

const LevelSummary& EstimateSummary::at(EstimatorKind e, ExposureLevel level) const {
  for (const auto& row : rows) {
    if (row.estimator == e && row.level == level) return row;
  }
  throw IndexError("no summary row for " + std::string(to_string(e)) + "/" + std::string(to_string(level)));
}

Scenario resolve_scenario(const ExperimentConfig& cfg) {
  Scenario sc;
  std::visit(overloaded{
                 [&](const GeneratedGraph& gen) {
                   Rng rng(gen.seed);
                   sc.graph = generate_graph(gen, rng);
                   sc.labels = index_labels(sc.graph.num_vertices());
                 },
                 [&](const EdgeListFile& f) {
                   auto in = open_input(f.path);
                   auto lg = load_edge_list(in);
                   sc.graph = std::move(lg.graph);
                   sc.labels = std::move(lg.labels);
                 },
                 [&](const RoundsFile& f) {
                   auto in = open_input(f.path);
                   const auto data = load_rounds(in);
                   sc.graph = build_true_graph_from_rounds(data, f.min_count);
                   sc.labels = data.labels;
                 },
                 [&](const InlineGraph& g) {
                   sc.graph = g.graph;
                   sc.labels = index_labels(sc.graph.num_vertices());
                 },
             },
             cfg.graph);
  if (sc.graph.num_vertices() < 2) throw RunError("the true graph needs at least two vertices");

  std::visit(overloaded{
                 [&](const DilatedOutcomes& d) {
                   sc.outcomes = OutcomeTable::constant(sc.graph.num_vertices(), d.values);
                 },
                 [&](const OutcomeFile& f) { sc.outcomes = load_outcome_file(f.path, sc.labels); },
                 [&](const InlineOutcomes& o) { sc.outcomes = o.table; },
             },
             cfg.outcomes);
  if (sc.outcomes.size() != sc.graph.num_vertices()) {
    throw DimensionError("outcome table has " + std::to_string(sc.outcomes.size()) + " rows for " +
                         std::to_string(sc.graph.num_vertices()) + " vertices");
  }
  sc.truth = truth(sc.outcomes);
  return sc;
}

TrialRecord run_trial(const ExperimentConfig& cfg, const Scenario& scenario, std::size_t t) {
  TrialRecord rec;
  rec.index = t;
  const Rng trial(derive_seed(cfg.master_seed, t));

  const Graph* g = &scenario.graph;
  const OutcomeTable* y = &scenario.outcomes;
  Graph regenerated;
  OutcomeTable regenerated_y;
  if (cfg.regenerate_graph) {
    Rng graph_stream = trial.split(2);
    regenerated = generate_graph(std::get<GeneratedGraph>(cfg.graph), graph_stream);
    regenerated_y = OutcomeTable::constant(regenerated.num_vertices(),
                                           std::get<DilatedOutcomes>(cfg.outcomes).values);
    g = &regenerated;
    y = &regenerated_y;
  }

  const bool need_observed = wants(cfg, EstimatorKind::AsNoisy) || wants(cfg, EstimatorKind::Mme);
  const bool need_fit = wants(cfg, EstimatorKind::Mme) && !cfg.noise_known;
  std::vector<Graph> observed;
  if (need_observed) observed = replicate(*g, cfg.noise, need_fit ? 3 : 1, trial.split(0));

  rec.noise_used = cfg.noise;
  if (need_fit) {
    try {
      const MomentStats m = moment_stats(observed[0], observed[1], observed[2]);
      rec.fit = fit_alpha_beta(m);
      rec.noise_used = {rec.fit->alpha_hat, rec.fit->beta_hat};
      rec.noise_used.validate();
    } catch (const std::exception& e) {
      rec.failed = true;
      rec.failure = e.what();
      return rec;
    }
  }

  Rng treatment_stream = trial.split(1);
  const Treatment treatment = assign_treatment(g->num_vertices(), cfg.p, treatment_stream);
  const RealizedOutcomes realized = realize_outcomes(*g, treatment, *y);

  for (EstimatorKind e : cfg.estimators) {
    auto& slot = rec.estimates[static_cast<std::size_t>(e)];
    switch (e) {
      case EstimatorKind::HtTrue:
        slot = ht_estimate(*g, treatment, realized, HtMode::TrueGraph);
        break;
      case EstimatorKind::AsNoisy:
        slot = ht_estimate(observed[0], treatment, realized, HtMode::Observed);
        break;
      case EstimatorKind::Mme: {
        const MixingRule rule = cfg.mixing == MixingRule::Mode::SparseFallback
                                    ? MixingRule::sparse_fallback()
                                    : MixingRule::order_of_magnitude(cfg.p);
        const MmeResult mme = mme_estimate(observed[0], treatment, realized, rec.noise_used, rule);
        slot = mme.means;
        rec.mme_units = mme.mme_units;
        rec.as_units = mme.as_units;
        rec.singular_fallbacks = mme.singular_fallbacks;
        break;
      }
    }
  }
  return rec;
}

std::vector<TrialRecord> run_trials(const ExperimentConfig& cfg, const Scenario& scenario,
                                    std::size_t first, std::size_t count) {
  std::vector<TrialRecord> records(count);
  unsigned workers = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k) records[k] = run_trial(cfg, scenario, first + k);
    return records;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < count; k = next++) {
          try {
            records[k] = run_trial(cfg, scenario, first + k);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            next = count;
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
  return records;
}

EstimateSummary summarize(const ExperimentConfig& cfg, const Scenario& scenario,
                          std::span<const TrialRecord> records) {
  EstimateSummary s;
  auto& meta = s.metadata;
  meta.trials_requested = records.size();
  meta.n_vertices = scenario.graph.num_vertices();
  meta.n_edges = scenario.graph.num_edges();

  std::vector<const TrialRecord*> used;
  std::vector<double> alphas, betas, mme_units, as_units, singular;
  for (const auto& rec : records) {
    if (rec.fit) {
      ++meta.fits_attempted;
      meta.fits_converged += rec.fit->converged ? 1 : 0;
    }
    if (rec.failed) {
      ++meta.trials_failed;
      if (meta.failure_samples.size() < 5) {
        meta.failure_samples.push_back("trial " + std::to_string(rec.index) + ": " + rec.failure);
      }
      continue;
    }
    used.push_back(&rec);
    alphas.push_back(rec.noise_used.alpha);
    betas.push_back(rec.noise_used.beta);
    mme_units.push_back(static_cast<double>(rec.mme_units));
    as_units.push_back(static_cast<double>(rec.as_units));
    singular.push_back(static_cast<double>(rec.singular_fallbacks));
  }
  // Fits that threw never produced a result; count them as attempted.
  meta.fits_attempted += std::count_if(records.begin(), records.end(),
                                       [](const TrialRecord& r) { return r.failed && !r.fit; });
  meta.trials_used = used.size();
  if (used.empty()) {
    throw RunError("all " + std::to_string(records.size()) + " trials failed" +
                   (meta.failure_samples.empty() ? "" : "; " + meta.failure_samples.front()));
  }
  if (static_cast<double>(meta.trials_failed) > cfg.max_failure_rate * static_cast<double>(records.size())) {
    throw RunError(std::to_string(meta.trials_failed) + " of " + std::to_string(records.size()) +
                   " trials failed, above the " + std::to_string(cfg.max_failure_rate) +
                   " ceiling; first: " + meta.failure_samples.front());
  }
  const auto mean_of = [](const std::vector<double>& xs) {
    return pairwise_sum(xs) / static_cast<double>(xs.size());
  };
  meta.mean_alpha_hat = mean_of(alphas);
  meta.mean_beta_hat = mean_of(betas);
  meta.mean_mme_units = mean_of(mme_units);
  meta.mean_as_units = mean_of(as_units);
  meta.mean_singular_fallbacks = mean_of(singular);

  const Rng bootstrap_root(derive_seed(cfg.master_seed, kBootstrapStream));
  std::vector<double> samples(used.size());
  for (EstimatorKind e : cfg.estimators) {
    for (ExposureLevel level : kAllLevels) {
      for (std::size_t k = 0; k < used.size(); ++k) {
        samples[k] = used[k]->estimates[static_cast<std::size_t>(e)][level];
      }
      LevelSummary row;
      row.estimator = e;
      row.level = level;
      row.truth = scenario.truth[level];
      row.mean_estimate = mean_of(samples);
      row.bias = row.mean_estimate - row.truth;
      row.sd = sample_sd(samples);
      Rng rng = bootstrap_root.split(static_cast<std::size_t>(e) * 4 + index(level));
      const BootstrapPair ci = bootstrap_mean_sd(samples, cfg.bootstrap_B, cfg.bootstrap_level, rng);
      row.bias_ci = {ci.mean.lo - row.truth, ci.mean.hi - row.truth};
      row.sd_ci = ci.sd;
      row.n_trials = used.size();
      row.n_failed = meta.trials_failed;
      s.rows.push_back(row);
    }
  }
  return s;
}

EstimateSummary run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const Scenario scenario = resolve_scenario(cfg);
  const auto records = run_trials(cfg, scenario, 0, cfg.trials);
  return summarize(cfg, scenario, records);
}

}  // namespace nnc
