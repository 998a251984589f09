#pragma once

#include <span>
#include <utility>
#include <vector>

#include "vso/objective.hpp"
#include "vso/space.hpp"

namespace vso {

struct VsoConfig {
  /// Fraction of the way each point moves toward R* per iteration.
  double rho = 0.5;
  int points_per_dim = 14;
  int num_gammas = 10;
  int max_iterations = 15;
  double saturation_tol = 0.001;
  int saturation_period = 3;
  std::pair<double, double> gamma_band_low{0.05, 0.49};
  std::pair<double, double> gamma_band_high{0.51, 0.95};

  /// Throws ConfigError on any violated invariant.
  void validate() const;
};

/// Two-register saturation test. The registers shift only on check iterations.
struct SaturationState {
  double fbest1 = 0.0;
  double fbest2 = 0.0;

  /// Re-arm after a new best during an initial scan.
  void reset(double fstar) noexcept;
  /// Shift registers; returns true when the run should stop.
  bool shift_and_test(double fstar, double tol) noexcept;
};

/// Diagonal positions for the probe-line intersections, low band then high band.
std::vector<double> gamma_schedule(int num_gammas,
                                   std::pair<double, double> low = {0.05, 0.49},
                                   std::pair<double, double> high = {0.51, 0.95});

/// Deterministic initial sample point distribution on axis-parallel probe lines.
PointSet build_ispd(const DecisionSpace& ds, const VsoConfig& cfg = {});

/// Moves every point a fraction rho of the way toward rstar.
PointSet reposition(const PointSet& points, std::span<const double> rstar, double rho);

RunResult run_vso(const Objective& objective, const DecisionSpace& ds, const VsoConfig& cfg = {});

}  // namespace vso
