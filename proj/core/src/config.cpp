#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <istream>
#include <string>

#include "json.hpp"
#include "nnc/errors.hpp"
#include "nnc/harness.hpp"

namespace nnc {
namespace {

using nlohmann::json;

const json& require(const json& obj, const char* key, const char* where) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string(where) + ": missing key `" + key + "`");
  return *it;
}

template <class T>
T read(const json& obj, const char* key, const char* where) {
  try {
    return require(obj, key, where).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string(where) + "." + key + ": " + e.what());
  }
}

template <class T>
T read_or(const json& obj, const char* key, const char* where, T fallback) {
  return obj.contains(key) ? read<T>(obj, key, where) : fallback;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_relative() && !base.empty() ? base / path : path;
}

DegreeDistribution parse_distribution(const json& j) {
  const auto type = read<std::string>(j, "type", "graph.distribution");
  if (type == "zero_truncated_poisson") {
    return ZeroTruncatedPoisson{read<double>(j, "mean", "graph.distribution")};
  }
  if (type == "pareto_cutoff") {
    return ParetoExpCutoff{read<double>(j, "rate", "graph.distribution"),
                           read<double>(j, "shape", "graph.distribution"),
                           read<double>(j, "lower", "graph.distribution"),
                           read<double>(j, "upper", "graph.distribution")};
  }
  throw ParseError("graph.distribution: unknown type `" + type + "`");
}

GraphSource parse_graph(const json& j, const std::filesystem::path& base) {
  const auto type = read<std::string>(j, "type", "graph");
  if (type == "generator") {
    GeneratedGraph g;
    g.distribution = parse_distribution(require(j, "distribution", "graph"));
    g.n = read_or<std::size_t>(j, "n", "graph", g.n);
    g.seed = read_or<std::uint64_t>(j, "seed", "graph", g.seed);
    g.drop_isolated = read_or<bool>(j, "drop_isolated", "graph", g.drop_isolated);
    return g;
  }
  if (type == "edge_list") return EdgeListFile{resolve(base, read<std::string>(j, "path", "graph"))};
  if (type == "rounds") {
    return RoundsFile{resolve(base, read<std::string>(j, "path", "graph")),
                      read_or<int>(j, "min_count", "graph", 2)};
  }
  throw ParseError("graph: unknown type `" + type + "`");
}

OutcomeSource parse_outcomes(const json& j, const std::filesystem::path& base) {
  const auto type = read<std::string>(j, "type", "outcomes");
  if (type == "dilated") {
    DilatedOutcomes d;
    if (j.contains("values")) {
      const auto values = read<std::vector<double>>(j, "values", "outcomes");
      if (values.size() != 4) throw ParseError("outcomes.values: expected 4 numbers");
      std::copy(values.begin(), values.end(), d.values.begin());
    }
    return d;
  }
  if (type == "file") return OutcomeFile{resolve(base, read<std::string>(j, "path", "outcomes"))};
  throw ParseError("outcomes: unknown type `" + type + "`");
}

MixingRule::Mode parse_mixing(const std::string& name) {
  if (name == "sparse_fallback") return MixingRule::Mode::SparseFallback;
  if (name == "order_of_magnitude") return MixingRule::Mode::OrderOfMagnitude;
  throw ParseError("mixing: unknown mode `" + name + "`");
}

std::string_view mixing_name(MixingRule::Mode m) {
  return m == MixingRule::Mode::SparseFallback ? "sparse_fallback" : "order_of_magnitude";
}

json distribution_json(const DegreeDistribution& d) {
  if (const auto* z = std::get_if<ZeroTruncatedPoisson>(&d)) {
    return {{"type", "zero_truncated_poisson"}, {"mean", z->mean}};
  }
  const auto& p = std::get<ParetoExpCutoff>(d);
  return {{"type", "pareto_cutoff"}, {"rate", p.rate}, {"shape", p.shape}, {"lower", p.lower}, {"upper", p.upper}};
}

}  // namespace

ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("config: top level must be an object");

  static const char* const kKnown[] = {"graph",     "regenerate_graph", "noise",    "p",
                                       "outcomes",  "trials",           "bootstrap_B",
                                       "bootstrap_level", "mixing",     "master_seed",
                                       "estimators", "threads",         "max_failure_rate"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(std::begin(kKnown), std::end(kKnown), key) == std::end(kKnown)) {
      throw ParseError("config: unknown key `" + key + "`");
    }
  }

  ExperimentConfig cfg;
  if (j.contains("graph")) cfg.graph = parse_graph(j["graph"], base_dir);
  cfg.regenerate_graph = read_or<bool>(j, "regenerate_graph", "config", cfg.regenerate_graph);
  if (j.contains("noise")) {
    const json& n = j["noise"];
    cfg.noise.alpha = read_or<double>(n, "alpha", "noise", cfg.noise.alpha);
    cfg.noise.beta = read_or<double>(n, "beta", "noise", cfg.noise.beta);
    cfg.noise_known = read_or<bool>(n, "known", "noise", cfg.noise_known);
  }
  cfg.p = read_or<double>(j, "p", "config", cfg.p);
  if (j.contains("outcomes")) cfg.outcomes = parse_outcomes(j["outcomes"], base_dir);
  cfg.trials = read_or<std::size_t>(j, "trials", "config", cfg.trials);
  cfg.bootstrap_B = read_or<std::size_t>(j, "bootstrap_B", "config", cfg.bootstrap_B);
  cfg.bootstrap_level = read_or<double>(j, "bootstrap_level", "config", cfg.bootstrap_level);
  if (j.contains("mixing")) cfg.mixing = parse_mixing(read<std::string>(j, "mixing", "config"));
  cfg.master_seed = read_or<std::uint64_t>(j, "master_seed", "config", cfg.master_seed);
  if (j.contains("estimators")) {
    cfg.estimators.clear();
    for (const auto& name : read<std::vector<std::string>>(j, "estimators", "config")) {
      cfg.estimators.push_back(parse_estimator(name));
    }
  }
  cfg.threads = read_or<unsigned>(j, "threads", "config", cfg.threads);
  cfg.max_failure_rate = read_or<double>(j, "max_failure_rate", "config", cfg.max_failure_rate);
  return cfg;
}

std::string config_to_json(const ExperimentConfig& cfg) {
  json j;
  if (const auto* g = std::get_if<GeneratedGraph>(&cfg.graph)) {
    j["graph"] = {{"type", "generator"},
                  {"distribution", distribution_json(g->distribution)},
                  {"n", g->n},
                  {"seed", g->seed},
                  {"drop_isolated", g->drop_isolated}};
  } else if (const auto* e = std::get_if<EdgeListFile>(&cfg.graph)) {
    j["graph"] = {{"type", "edge_list"}, {"path", e->path.string()}};
  } else if (const auto* r = std::get_if<RoundsFile>(&cfg.graph)) {
    j["graph"] = {{"type", "rounds"}, {"path", r->path.string()}, {"min_count", r->min_count}};
  } else {
    const auto& g = std::get<InlineGraph>(cfg.graph).graph;
    j["graph"] = {{"type", "inline"}, {"n", g.num_vertices()}, {"edges", g.num_edges()}};
  }
  j["regenerate_graph"] = cfg.regenerate_graph;
  j["noise"] = {{"alpha", cfg.noise.alpha}, {"beta", cfg.noise.beta}, {"known", cfg.noise_known}};
  j["p"] = cfg.p;
  if (const auto* d = std::get_if<DilatedOutcomes>(&cfg.outcomes)) {
    j["outcomes"] = {{"type", "dilated"}, {"values", d->values}};
  } else if (const auto* f = std::get_if<OutcomeFile>(&cfg.outcomes)) {
    j["outcomes"] = {{"type", "file"}, {"path", f->path.string()}};
  } else {
    j["outcomes"] = {{"type", "inline"}, {"rows", std::get<InlineOutcomes>(cfg.outcomes).table.size()}};
  }
  j["trials"] = cfg.trials;
  j["bootstrap_B"] = cfg.bootstrap_B;
  j["bootstrap_level"] = cfg.bootstrap_level;
  j["mixing"] = mixing_name(cfg.mixing);
  j["master_seed"] = cfg.master_seed;
  j["estimators"] = json::array();
  for (EstimatorKind e : cfg.estimators) j["estimators"].push_back(to_string(e));
  j["threads"] = cfg.threads;
  j["max_failure_rate"] = cfg.max_failure_rate;
  return j.dump(2);
}

void apply_env_overrides(ExperimentConfig& cfg) {
  const char* raw = std::getenv("NNC_SEED");
  if (raw == nullptr || *raw == '\0') return;
  const std::string text(raw);
  const bool hex = text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X');
  const char* first = text.c_str() + (hex ? 2 : 0);
  const char* last = text.c_str() + text.size();
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(first, last, value, hex ? 16 : 10);
  if (ec != std::errc{} || ptr != last) {
    throw ParameterError("NNC_SEED must be a 64-bit unsigned integer, got `" + text + "`");
  }
  cfg.master_seed = value;
}

}  // namespace nnc
