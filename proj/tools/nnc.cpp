#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nnc/errors.hpp"
#include "nnc/harness.hpp"
#include "nnc/noise_fit.hpp"
#include "nnc/theory.hpp"

namespace {

using namespace nnc;

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw RunError("cannot open `" + path + "`");
  return in;
}

// Runs `body` against the file at `path`, or stdout for "" / "-".
template <class F>
void with_output(const std::string& path, F&& body) {
  if (path.empty() || path == "-") {
    body(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw RunError("cannot open `" + path + "` for writing");
  body(out);
  out.flush();
  if (!out) throw RunError("write to `" + path + "` failed");
}

struct GenerateArgs {
  std::string law = "ztp";
  double mean = 10.0;
  double rate = 0.01, shape = 1.0, lower = 1.0, upper = 0.0;
  std::size_t n = 500;
  std::uint64_t seed = 1;
  bool keep_isolated = false;
  std::string out;
};

void run_generate(const GenerateArgs& a) {
  GeneratedGraph spec;
  spec.n = a.n;
  spec.seed = a.seed;
  spec.drop_isolated = !a.keep_isolated;
  if (a.law == "ztp") {
    spec.distribution = ZeroTruncatedPoisson{a.mean};
  } else {
    const double upper = a.upper > 0.0 ? a.upper : static_cast<double>(a.n - 1);
    spec.distribution = ParetoExpCutoff{a.rate, a.shape, a.lower, upper};
  }
  validate(spec.distribution, spec.n);
  ExperimentConfig cfg;
  cfg.graph = spec;
  const Scenario sc = resolve_scenario(cfg);
  with_output(a.out, [&](std::ostream& o) { write_edge_list(o, sc.graph, sc.labels); });
  std::cerr << "generated " << sc.graph.num_vertices() << " vertices, " << sc.graph.num_edges()
            << " edges\n";
}

struct PerturbArgs {
  std::string in;
  double alpha = 0.0, beta = 0.0;
  std::uint64_t seed = 1;
  std::size_t replicates = 1;
  std::string out;
};

void run_perturb(const PerturbArgs& a) {
  auto in = open_in(a.in);
  const LabeledGraph g = load_edge_list(in);
  const auto obs = replicate(g.graph, NoiseParams{a.alpha, a.beta}, a.replicates, Rng(a.seed));
  for (std::size_t r = 0; r < obs.size(); ++r) {
    std::string path = a.out;
    if (obs.size() > 1) {
      if (path.empty() || path == "-") throw ParameterError("--replicates > 1 needs --output");
      path += "." + std::to_string(r + 1);
    }
    with_output(path, [&](std::ostream& o) { write_edge_list(o, obs[r], g.labels); });
  }
}

struct NoiseFitArgs {
  std::vector<std::string> files;
  std::size_t num_vertices = 0;
  double alpha0 = -1.0;
  std::string out;
};

void run_noise_fit(const NoiseFitArgs& a) {
  LabelIndex index;
  std::vector<Graph> loaded;
  for (const auto& f : a.files) {
    auto in = open_in(f);
    loaded.push_back(load_edge_list(in, index));
  }
  if (a.num_vertices != 0 && a.num_vertices < index.size()) {
    throw ParameterError("--num-vertices " + std::to_string(a.num_vertices) + " is below the " +
                         std::to_string(index.size()) + " labels seen");
  }
  const std::size_t n = a.num_vertices != 0 ? a.num_vertices : index.size();
  std::vector<Graph> reps;
  for (const auto& g : loaded) reps.push_back(Graph::from_edges(n, g.edges()));
  NoiseFitOptions opts;
  opts.alpha0 = a.alpha0;
  const NoiseFitResult r = fit_alpha_beta(moment_stats(reps[0], reps[1], reps[2]), opts);
  with_output(a.out, [&](std::ostream& o) {
    o << "alpha_hat,beta_hat,delta_hat,iterations,converged\n"
      << format_double(r.alpha_hat) << ',' << format_double(r.beta_hat) << ','
      << format_double(r.delta_hat) << ',' << r.iterations << ',' << (r.converged ? "true" : "false")
      << '\n';
  });
}

struct BiasTheoryArgs {
  std::string degrees;
  std::string graph;
  double alpha = 0.0, beta = 0.0, p = 0.1;
  std::size_t num_vertices = 0;
  std::vector<double> outcomes{10.0, 7.0, 5.0, 1.0};
  std::string out;
};

std::vector<std::size_t> read_degrees(const std::string& path) {
  auto in = open_in(path);
  std::vector<std::size_t> degrees;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || (line_no == 1 && line == "degree")) continue;
    std::size_t used = 0;
    try {
      const long long d = std::stoll(line, &used);
      if (used != line.size() || d < 0) throw std::invalid_argument(line);
      degrees.push_back(static_cast<std::size_t>(d));
    } catch (const std::exception&) {
      throw ParseError(path + ": bad degree `" + line + "`", line_no);
    }
  }
  return degrees;
}

void run_bias_theory(const BiasTheoryArgs& a) {
  std::vector<std::size_t> degrees;
  if (!a.graph.empty()) {
    auto in = open_in(a.graph);
    degrees = load_edge_list(in).graph.degrees();
  } else {
    degrees = read_degrees(a.degrees);
  }
  if (degrees.empty()) throw ParameterError("no degrees given");
  if (a.outcomes.size() != 4) throw ParameterError("--outcomes needs four values");
  const std::size_t n_v = a.num_vertices != 0 ? a.num_vertices : degrees.size();
  const LevelVector y{a.outcomes[0], a.outcomes[1], a.outcomes[2], a.outcomes[3]};
  const auto table = OutcomeTable::constant(degrees.size(), y);
  const BiasPrediction pred = bias_theorem1(degrees, table, NoiseParams{a.alpha, a.beta}, a.p, n_v);
  with_output(a.out, [&](std::ostream& o) {
    o << "level,predicted_bias,has_remainder\n";
    for (ExposureLevel level : kAllLevels) {
      o << to_string(level) << ',' << format_double(pred.bias[level]) << ','
        << (BiasPrediction::has_remainder[index(level)] ? "true" : "false") << '\n';
    }
  });
}

struct ExperimentArgs {
  std::string config;
  std::string out = "results.csv";
  std::optional<std::size_t> trials;
  std::optional<unsigned> threads;
};

void run_experiment_cmd(const ExperimentArgs& a) {
  auto in = open_in(a.config);
  ExperimentConfig cfg = parse_config(in, std::filesystem::path(a.config).parent_path());
  apply_env_overrides(cfg);
  if (a.trials) cfg.trials = *a.trials;
  if (a.threads) cfg.threads = *a.threads;
  const EstimateSummary s = run_experiment(cfg);
  emit_results(s, cfg, a.out);
  std::cerr << "wrote " << a.out << " and " << a.out << ".json (" << s.metadata.trials_used << " trials used, "
            << s.metadata.trials_failed << " failed)\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exposure-mapping estimators under noisy network measurement"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Draw a graph from a degree law and write an edge list");
  g->add_option("--law", gen.law, "Degree law")->check(CLI::IsMember({"ztp", "pareto"}));
  g->add_option("--mean", gen.mean, "Zero-truncated Poisson mean degree");
  g->add_option("--rate", gen.rate, "Pareto cutoff rate");
  g->add_option("--shape", gen.shape, "Pareto shape");
  g->add_option("--lower", gen.lower, "Pareto lower bound");
  g->add_option("--upper", gen.upper, "Pareto upper bound (default n-1)");
  g->add_option("-n,--num-vertices", gen.n, "Vertices before isolated ones are dropped");
  g->add_option("--seed", gen.seed, "Generator seed");
  g->add_flag("--keep-isolated", gen.keep_isolated, "Keep vertices left isolated by erasure");
  g->add_option("-o,--output", gen.out, "Output edge list (default stdout)");
  g->callback([&] { run_generate(gen); });

  PerturbArgs per;
  auto* p = app.add_subcommand("perturb", "Apply edge-flip noise to an edge list");
  p->add_option("-i,--input", per.in, "Input edge list")->required();
  p->add_option("--alpha", per.alpha, "False-positive rate")->required();
  p->add_option("--beta", per.beta, "False-negative rate")->required();
  p->add_option("--seed", per.seed, "Noise seed");
  p->add_option("-r,--replicates", per.replicates, "Independent replicates (files OUTPUT.1, OUTPUT.2, ...)")
      ->check(CLI::PositiveNumber);
  p->add_option("-o,--output", per.out, "Output edge list (default stdout)");
  p->callback([&] { run_perturb(per); });

  NoiseFitArgs fit;
  auto* f = app.add_subcommand("noise-fit", "Estimate alpha, beta and density from three replicates");
  f->add_option("replicates", fit.files, "Three edge-list files")->required()->expected(3);
  f->add_option("--num-vertices", fit.num_vertices, "Vertex count when some vertices appear in no file");
  f->add_option("--alpha0", fit.alpha0, "Starting alpha (default min(u1/10, u2/2))");
  f->add_option("-o,--output", fit.out, "Output CSV (default stdout)");
  f->callback([&] { run_noise_fit(fit); });

  BiasTheoryArgs bias;
  auto* b = app.add_subcommand("bias-theory", "Predicted bias of the noisy exposure-mapping means");
  auto* deg_opt = b->add_option("--degrees", bias.degrees, "File with one true degree per line");
  auto* graph_opt = b->add_option("--graph", bias.graph, "Edge list of the true graph");
  deg_opt->excludes(graph_opt);
  b->add_option("--alpha", bias.alpha, "False-positive rate")->required();
  b->add_option("--beta", bias.beta, "False-negative rate")->required();
  b->add_option("--p", bias.p, "Treatment probability");
  b->add_option("--num-vertices", bias.num_vertices, "Network size (default: number of degrees)");
  b->add_option("--outcomes", bias.outcomes, "Outcomes at c11 c10 c01 c00")->expected(4)->delimiter(',');
  b->add_option("-o,--output", bias.out, "Output CSV (default stdout)");
  b->callback([&] {
    if (bias.degrees.empty() && bias.graph.empty()) throw CLI::RequiredError("--degrees or --graph");
    run_bias_theory(bias);
  });

  ExperimentArgs exp;
  auto* e = app.add_subcommand("experiment", "Run a Monte Carlo experiment from a JSON config");
  e->add_option("config", exp.config, "JSON config file")->required()->check(CLI::ExistingFile);
  e->add_option("-o,--output", exp.out, "Results CSV; the JSON sidecar is OUTPUT.json");
  e->add_option("--trials", exp.trials, "Override the trial count");
  e->add_option("--threads", exp.threads, "Override the worker count");
  e->callback([&] { run_experiment_cmd(exp); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    return app.exit(err);
  } catch (const std::exception& err) {
    std::cerr << "nnc: " << err.what() << '\n';
    return 1;
  }
  return 0;
}
