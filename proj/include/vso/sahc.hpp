#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>

#include "vso/objective.hpp"
#include "vso/space.hpp"

namespace vso {

/// Default root seed for SAHC suite runs.
inline constexpr std::uint64_t kDefaultSahcSeed = 20130702;

struct SahcConfig {
  int points_per_dim = 140;
  int num_runs = 1000;
  int max_iterations = 15;
  double saturation_tol = 0.001;
  int saturation_period = 3;
  std::pair<double, double> init_band{0.05, 0.95};
  /// Perturbation half-width as a fraction of the principal diagonal.
  double tweak_scale = 0.1;
  std::uint64_t seed = kDefaultSahcSeed;
  /// Faithful mode: best record and saturation registers persist across runs.
  /// When false every run starts fresh and the driver returns the max over runs.
  bool global_best_across_runs = true;

  void validate() const;
};

/// Each coordinate is min + U[band) * (max - min); np*nd draws, point-major.
PointSet random_ispd(const DecisionSpace& ds, std::size_t np, UniformSource& rng,
                     std::pair<double, double> band = {0.05, 0.95});

/// Each coordinate becomes clamp(x + U[-scale, scale) * L_diag, min, max); one
/// draw per coordinate, point-major.
PointSet tweak(const PointSet& points, const DecisionSpace& ds, UniformSource& rng, double scale);

/// Runs num_runs hill climbs; run r draws from the substream (seed, r).
RunResult run_sahc(const Objective& objective, const DecisionSpace& ds, const SahcConfig& cfg = {});

}  // namespace vso
