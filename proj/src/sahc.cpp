#include "vso/sahc.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <string>

#include "vso/vso.hpp"

namespace vso {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct ClimbState {
  BestRecord best;
  SaturationState sat;
};

}  // namespace

void SahcConfig::validate() const {
  if (points_per_dim < 1) throw ConfigError("points_per_dim must be >= 1");
  if (num_runs < 1) throw ConfigError("num_runs must be >= 1");
  if (max_iterations < 1) throw ConfigError("max_iterations must be >= 1");
  if (saturation_period < 1) throw ConfigError("saturation_period must be >= 1");
  if (!(saturation_tol >= 0.0)) throw ConfigError("saturation_tol must be non-negative");
  if (!(tweak_scale >= 0.0)) throw ConfigError("tweak_scale must be non-negative");
  if (!(init_band.first >= 0.0 && init_band.first <= init_band.second && init_band.second <= 1.0)) {
    throw ConfigError("init_band must lie within [0, 1]");
  }
}

PointSet random_ispd(const DecisionSpace& ds, std::size_t np, UniformSource& rng,
                     std::pair<double, double> band) {
  if (np < 1) throw ConfigError("random_ispd needs at least one point");
  PointSet pts(np, ds.nd(), 0);
  for (std::size_t p = 0; p < np; ++p) {
    for (std::size_t i = 0; i < ds.nd(); ++i) {
      pts.at(p, i) = ds.min(i) + rng.uniform(band.first, band.second) * ds.width(i);
    }
  }
  return pts;
}

PointSet tweak(const PointSet& points, const DecisionSpace& ds, UniformSource& rng, double scale) {
  if (points.nd() != ds.nd()) throw ConfigError("tweak: point dimension does not match the space");
  if (!(scale >= 0.0)) throw ConfigError("tweak scale must be non-negative");
  PointSet next(points.np(), points.nd(), points.iteration() + 1);
  const double diag = ds.diag_length();
  for (std::size_t p = 0; p < points.np(); ++p) {
    for (std::size_t i = 0; i < points.nd(); ++i) {
      const double moved = points.at(p, i) + rng.uniform(-scale, scale) * diag;
      next.at(p, i) = std::min(std::max(moved, ds.min(i)), ds.max(i));
    }
  }
  return next;
}

RunResult run_sahc(const Objective& objective, const DecisionSpace& ds, const SahcConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::size_t np = static_cast<std::size_t>(cfg.points_per_dim) * ds.nd();

  RunResult result;
  result.best.fstar = kNegInf;
  result.best.rstar.assign(ds.nd(), 0.0);
  result.runs = static_cast<std::size_t>(cfg.num_runs);

  // In faithful mode one state spans every run.
  ClimbState shared;
  shared.best = result.best;
  shared.sat.reset(kNegInf);

  for (std::size_t run = 0; run < result.runs; ++run) {
    ClimbState fresh;
    if (!cfg.global_best_across_runs) {
      fresh.best.fstar = kNegInf;
      fresh.best.rstar.assign(ds.nd(), 0.0);
      fresh.sat.reset(kNegInf);
    }
    ClimbState& st = cfg.global_best_across_runs ? shared : fresh;
    Rng rng(cfg.seed, run);

    PointSet points = random_ispd(ds, np, rng, cfg.init_band);

    auto scan = [&](int j, bool initial) {
      for (std::size_t p = 0; p < points.np(); ++p) {
        double f;
        try {
          f = objective(points.point(p));
        } catch (const std::exception& e) {
          throw RunError("SAHC objective failed in run " + std::to_string(run) + " at point " +
                             std::to_string(p) + ", iteration " + std::to_string(j) + ": " + e.what(),
                         p, j, run);
        }
        ++result.n_eval;
        if (f >= st.best.fstar) {
          const bool strict = f > st.best.fstar;
          st.best.fstar = f;
          auto x = points.point(p);
          st.best.rstar.assign(x.begin(), x.end());
          st.best.found_at_point = p;
          st.best.found_at_iteration = j;
          st.best.found_at_run = run;
          if (initial) st.sat.reset(st.best.fstar);
          // Outside faithful mode a per-run record is not a global improvement.
          if (strict && objective.on_new_best && st.best.fstar > result.best.fstar) {
            objective.on_new_best();
          }
        }
      }
    };

    scan(0, true);
    int last = 0;
    for (int j = 1; j <= cfg.max_iterations; ++j) {
      points = tweak(points, ds, rng, cfg.tweak_scale);
      scan(j, false);
      last = j;
      if (j % cfg.saturation_period == 0 && st.sat.shift_and_test(st.best.fstar, cfg.saturation_tol)) {
        break;
      }
    }

    if (st.best.fstar > result.best.fstar || run == 0) result.best = st.best;
    result.last_iteration = last;
    result.trace.push_back({static_cast<int>(run), result.best.fstar});
  }

  result.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace vso
