#include "vso/vso.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <string>

namespace vso {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Gammas on a whole-percent grid n / 100 give (n max + (100 - n) min) / 100.
double diagonal_coordinate(double lo, double hi, double gamma) {
  const double pct = gamma * 100.0;
  const double n = std::round(pct);
  if (std::abs(pct - n) < 1e-9) return (n * hi + (100.0 - n) * lo) / 100.0;
  return lo + gamma * (hi - lo);
}

}  // namespace

void VsoConfig::validate() const {
  if (points_per_dim < 2 || points_per_dim % 2 != 0) {
    throw ConfigError("points_per_dim must be even and >= 2");
  }
  if (num_gammas < 2 || num_gammas % 2 != 0) throw ConfigError("num_gammas must be even and >= 2");
  if (!(rho >= 0.0 && rho <= 1.0)) throw ConfigError("rho must lie in [0, 1]");
  if (!(saturation_tol >= 0.0)) throw ConfigError("saturation_tol must be non-negative");
  if (max_iterations < 1) throw ConfigError("max_iterations must be >= 1");
  if (saturation_period < 1) throw ConfigError("saturation_period must be >= 1");
  for (const auto& band : {gamma_band_low, gamma_band_high}) {
    if (!(band.first >= 0.0 && band.first <= band.second && band.second <= 1.0)) {
      throw ConfigError("gamma bands must satisfy 0 <= low <= high <= 1");
    }
  }
}

void SaturationState::reset(double fstar) noexcept {
  fbest1 = fstar;
  fbest2 = kNegInf;
}

bool SaturationState::shift_and_test(double fstar, double tol) noexcept {
  fbest1 = fbest2;
  fbest2 = fstar;
  return fbest2 - fbest1 <= tol;
}

std::vector<double> gamma_schedule(int num_gammas, std::pair<double, double> low,
                                   std::pair<double, double> high) {
  if (num_gammas % 2 != 0) throw ConfigError("# gammas must be an even number");
  if (num_gammas < 4) throw ConfigError("num_gammas must be >= 4 for a band schedule");
  const int half = num_gammas / 2;
  const double step_low = (low.second - low.first) / (half - 1);
  const double step_high = (high.second - high.first) / (half - 1);
  std::vector<double> g;
  g.reserve(num_gammas);
  for (int k = 0; k < half; ++k) g.push_back(low.first + k * step_low);
  for (int k = 0; k < half; ++k) g.push_back(high.first + k * step_high);
  return g;
}

PointSet build_ispd(const DecisionSpace& ds, const VsoConfig& cfg) {
  cfg.validate();
  // Two gammas leave no room for an interior step; use the band endpoints
  // nearest the corners.
  const std::vector<double> gammas =
      cfg.num_gammas == 2 ? std::vector<double>{cfg.gamma_band_low.first, cfg.gamma_band_high.second}
                          : gamma_schedule(cfg.num_gammas, cfg.gamma_band_low, cfg.gamma_band_high);

  const std::size_t nd = ds.nd();
  const std::size_t per_dim = static_cast<std::size_t>(cfg.points_per_dim);
  const std::size_t block = per_dim * nd;
  PointSet pts(block * gammas.size(), nd, 0);

  for (std::size_t g = 0; g < gammas.size(); ++g) {
    const std::size_t offset = g * block;
    for (std::size_t p = 0; p < block; ++p) {
      for (std::size_t i = 0; i < nd; ++i) pts.at(offset + p, i) = diagonal_coordinate(ds.min(i), ds.max(i), gammas[g]);
    }
    for (std::size_t i = 0; i < nd; ++i) {
      const double dx = ds.width(i) / static_cast<double>(per_dim - 1);
      for (std::size_t k = 0; k < per_dim; ++k) {
        pts.at(offset + k + per_dim * i, i) = ds.min(i) + static_cast<double>(k) * dx;
      }
    }
  }
  return pts;
}

PointSet reposition(const PointSet& points, std::span<const double> rstar, double rho) {
  if (rstar.size() != points.nd()) {
    throw ConfigError("reposition: R* has " + std::to_string(rstar.size()) + " coordinates, points have " +
                      std::to_string(points.nd()));
  }
  if (!(rho >= 0.0 && rho <= 1.0)) throw ConfigError("rho must lie in [0, 1]");
  PointSet next(points.np(), points.nd(), points.iteration() + 1);
  for (std::size_t p = 0; p < points.np(); ++p) {
    for (std::size_t i = 0; i < points.nd(); ++i) {
      const double x = points.at(p, i);
      next.at(p, i) = x + rho * (rstar[i] - x);
    }
  }
  return next;
}

RunResult run_vso(const Objective& objective, const DecisionSpace& ds, const VsoConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();

  RunResult result;
  BestRecord& best = result.best;
  best.fstar = kNegInf;
  best.rstar.assign(ds.nd(), 0.0);
  SaturationState sat;
  sat.reset(kNegInf);

  PointSet points = build_ispd(ds, cfg);

  // Evaluates every point in ascending index order; a later point with equal
  // fitness replaces the incumbent.
  auto scan = [&](int j, bool initial) {
    for (std::size_t p = 0; p < points.np(); ++p) {
      double f;
      try {
        f = objective(points.point(p));
      } catch (const std::exception& e) {
        throw RunError("VSO objective failed at point " + std::to_string(p) + ", iteration " +
                           std::to_string(j) + ": " + e.what(),
                       p, j);
      }
      ++result.n_eval;
      if (f >= best.fstar) {
        const bool strict = f > best.fstar;
        best.fstar = f;
        auto x = points.point(p);
        best.rstar.assign(x.begin(), x.end());
        best.found_at_point = p;
        best.found_at_iteration = j;
        if (initial) sat.reset(best.fstar);
        if (strict && objective.on_new_best) objective.on_new_best();
      }
    }
    result.trace.push_back({j, best.fstar});
    result.last_iteration = j;
  };

  scan(0, true);
  for (int j = 1; j <= cfg.max_iterations; ++j) {
    points = reposition(points, best.rstar, cfg.rho);
    scan(j, false);
    if (j % cfg.saturation_period == 0 && sat.shift_and_test(best.fstar, cfg.saturation_tol)) break;
  }

  result.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace vso
