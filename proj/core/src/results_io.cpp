#include <charconv>
#include <fstream>
#include <ostream>

#include "json.hpp"
#include "nnc/errors.hpp"
#include "nnc/harness.hpp"

namespace nnc {

std::string format_double(double x) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw RunError("cannot format a double");
  return {buf, end};
}

void emit_results(const EstimateSummary& s, std::ostream& csv) {
  csv << kResultsHeader << '\n';
  for (const auto& r : s.rows) {
    csv << to_string(r.estimator) << ',' << to_string(r.level) << ',' << format_double(r.truth) << ','
        << format_double(r.mean_estimate) << ',' << format_double(r.bias) << ','
        << format_double(r.bias_ci.lo) << ',' << format_double(r.bias_ci.hi) << ','
        << format_double(r.sd) << ',' << format_double(r.sd_ci.lo) << ',' << format_double(r.sd_ci.hi)
        << ',' << r.n_trials << ',' << r.n_failed << '\n';
  }
}

void emit_sidecar(const EstimateSummary& s, const ExperimentConfig& cfg, std::ostream& out) {
  using nlohmann::json;
  const auto& m = s.metadata;
  json j;
  j["config"] = json::parse(config_to_json(cfg));
  j["metadata"] = {
      {"trials_requested", m.trials_requested},
      {"trials_used", m.trials_used},
      {"trials_failed", m.trials_failed},
      {"fits_attempted", m.fits_attempted},
      {"fits_converged", m.fits_converged},
      {"fit_convergence_rate",
       m.fits_attempted == 0 ? 1.0
                             : static_cast<double>(m.fits_converged) / static_cast<double>(m.fits_attempted)},
      {"mean_alpha_hat", m.mean_alpha_hat},
      {"mean_beta_hat", m.mean_beta_hat},
      {"mean_mme_units", m.mean_mme_units},
      {"mean_as_units", m.mean_as_units},
      {"mean_singular_fallbacks", m.mean_singular_fallbacks},
      {"n_vertices", m.n_vertices},
      {"n_edges", m.n_edges},
      {"failure_samples", m.failure_samples},
  };
  out << j.dump(2) << '\n';
}

void emit_results(const EstimateSummary& s, const ExperimentConfig& cfg, const std::filesystem::path& csv_path) {
  const auto write = [](const std::filesystem::path& path, auto&& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw RunError("cannot open `" + path.string() + "` for writing");
    body(out);
    out.flush();
    if (!out) throw RunError("write to `" + path.string() + "` failed");
  };
  write(csv_path, [&](std::ostream& o) { emit_results(s, o); });
  std::filesystem::path sidecar = csv_path;
  sidecar += ".json";
  write(sidecar, [&](std::ostream& o) { emit_sidecar(s, cfg, o); });
}

}  // namespace nnc
