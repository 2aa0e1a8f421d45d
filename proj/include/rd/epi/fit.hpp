#pragma once

#include <array>
#include <string>
#include <vector>

#include "rd/epi/levmar.hpp"
#include "rd/epi/models.hpp"

namespace rd::epi {

struct FitOptions {
  int multi_starts = 5;
  std::uint64_t seed = 12345;
  double population_factor = 10.0;  // N = factor * total observed volume
  bool cumulative_target = false;   // fit cumulative volume instead of per-interval
  LmOptions lm;
};

template <typename Params>
struct FitResult {
  Params params;
  double residual_sse = 0;
  int iterations = 0;
  bool converged = false;
};

FitResult<SisParams> fit_sis(const VolumeCurve& curve, double population,
                             const FitOptions& opts = {});
FitResult<SeizParams> fit_seiz(const VolumeCurve& curve, double population,
                               const FitOptions& opts = {});
FitResult<SpikeMParams> fit_spikem(const VolumeCurve& curve, double population,
                                   const FitOptions& opts = {});

// The 15 Table-shaped parameters, declared order.
inline constexpr int kEpiFeatureCount = 15;
const std::vector<std::string>& epi_feature_names();

struct EpiFeatures {
  std::array<double, kEpiFeatureCount> values{};  // beta_sis..q_p
  double sse_sis = 0, sse_seiz = 0, sse_spikem = 0;
  bool converged_sis = false, converged_seiz = false, converged_spikem = false;
};

// Fits all three models to the prefix volume curve. All-zero or too-short
// prefixes yield the fallback all-zero vector with converged flags false;
// a prefix shorter than 2 intervals throws SchemaError.
EpiFeatures fit_epi_features(const VolumeCurve& prefix,
                             const FitOptions& opts = {});

}  // namespace rd::epi
