#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "nnc/graph.hpp"
#include "nnc/noise.hpp"
#include "nnc/random.hpp"

namespace nnc {

/// Four-level exposure condition. The first digit is the unit's own treatment,
/// the second whether enough neighbours are treated. Index order matches the
/// outcome table columns.
enum class ExposureLevel : std::size_t { C11 = 0, C10 = 1, C01 = 2, C00 = 3 };

inline constexpr std::array<ExposureLevel, 4> kAllLevels{ExposureLevel::C11, ExposureLevel::C10,
                                                         ExposureLevel::C01, ExposureLevel::C00};

constexpr std::size_t index(ExposureLevel level) noexcept { return static_cast<std::size_t>(level); }
std::string_view to_string(ExposureLevel level) noexcept;
/// Parses "c11", "c10", "c01", "c00"; throws ParseError otherwise.
ExposureLevel parse_level(std::string_view name);

/// Bernoulli(p) assignment, one entry per vertex.
struct Treatment {
  double p = 0.5;
  std::vector<bool> z;

  std::size_t size() const noexcept { return z.size(); }
};

/// i.i.d. Bernoulli(p) draws in vertex order. Throws ParameterError unless 0 < p < 1.
Treatment assign_treatment(std::size_t n, double p, Rng& rng);

std::size_t treated_neighbors(const Treatment& t, const Graph& g, Vertex i);

ExposureLevel exposure_level(const Treatment& t, const Graph& g, Vertex i);

/// Neighbourhood threshold for the generalized mapping: either an absolute
/// count m >= 1, or a fraction q in [0, 1] with m_i = max(1, ceil(q d_i)).
struct GeneralizedExposureConfig {
  struct Absolute {
    std::size_t m = 1;
  };
  struct Fractional {
    double q = 0.0;
  };
  std::variant<Absolute, Fractional> rule = Absolute{};

  static GeneralizedExposureConfig absolute(std::size_t m);
  static GeneralizedExposureConfig fractional(double q);

  std::size_t threshold(std::size_t degree) const;
};

/// As exposure_level, with "at least one treated neighbour" replaced by
/// "at least m_i treated neighbours".
ExposureLevel exposure_level_generalized(const Treatment& t, const Graph& g, Vertex i,
                                         const GeneralizedExposureConfig& cfg);

struct ExposureProbabilities {
  std::array<double, 4> values{};

  double operator[](ExposureLevel level) const noexcept { return values[index(level)]; }
  double& operator[](ExposureLevel level) noexcept { return values[index(level)]; }
};

/// Closed-form level probabilities for a unit with (possibly non-integer)
/// degree d under Bernoulli(p) assignment.
ExposureProbabilities exposure_probabilities(double d, double p);

/// Binomial head/tail form for the m-threshold mapping with integer degree d.
ExposureProbabilities exposure_probabilities_generalized(std::size_t d, double p, std::size_t m);

/// Row-major 2x2 block.
using Block2 = std::array<std::array<double, 2>, 2>;

/// Expected confusion of observed (rows) against true (columns) exposure for a
/// unit with true degree d. S covers the treated arm {c11, c10}, Q the control
/// arm {c01, c00}; Q = (1-p)/p * S.
struct ConfusionMatrix {
  Block2 S{};
  Block2 Q{};
  double d = 0.0;
  std::size_t n_v = 0;
  double p = 0.0;
  NoiseParams noise;

  double determinant() const noexcept { return S[0][0] * S[1][1] - S[0][1] * S[1][0]; }
};

/// Determinants at or below this are treated as singular.
inline constexpr double kSingularDeterminant = 1e-12;

/// Throws ParameterError when d lies outside [0, n_v - 1] or inputs are invalid.
ConfusionMatrix confusion_matrix(double d, std::size_t n_v, double p, const NoiseParams& noise);

struct ConfusionInverse {
  Block2 S_inv{};
  Block2 Q_inv{};
};

/// nullopt signals a singular S (det <= kSingularDeterminant).
std::optional<ConfusionInverse> invert_confusion(const ConfusionMatrix& P);

}  // namespace nnc
