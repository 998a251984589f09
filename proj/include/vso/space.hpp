#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vso {

/// Raised when bounds or configuration values violate a precondition.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Axis-aligned search box. Immutable after construction.
class DecisionSpace {
 public:
  /// Throws ConfigError on mismatched/empty bounds or any mins[i] >= maxs[i].
  DecisionSpace(std::vector<double> mins, std::vector<double> maxs);

  const std::vector<double>& mins() const noexcept { return mins_; }
  const std::vector<double>& maxs() const noexcept { return maxs_; }
  std::size_t nd() const noexcept { return mins_.size(); }
  double min(std::size_t i) const { return mins_[i]; }
  double max(std::size_t i) const { return maxs_[i]; }
  double width(std::size_t i) const { return maxs_[i] - mins_[i]; }

  /// Euclidean length of the segment from mins to maxs.
  double diag_length() const noexcept { return diag_length_; }

  bool contains(std::span<const double> x) const noexcept;

 private:
  std::vector<double> mins_;
  std::vector<double> maxs_;
  double diag_length_ = 0.0;
};

DecisionSpace make_decision_space(std::vector<double> mins, std::vector<double> maxs);

/// Same bounds on every axis.
DecisionSpace make_cube(std::size_t nd, double lo, double hi);

/// mins + gamma * (maxs - mins), gamma in [0, 1].
std::vector<double> principal_diagonal_point(const DecisionSpace& ds, double gamma);

/// Sample point positions for one iteration, stored row-major (point, dimension).
class PointSet {
 public:
  PointSet() = default;
  PointSet(std::size_t np, std::size_t nd, int iteration = 0)
      : np_(np), nd_(nd), iteration_(iteration), data_(np * nd, 0.0) {}

  std::size_t np() const noexcept { return np_; }
  std::size_t nd() const noexcept { return nd_; }
  int iteration() const noexcept { return iteration_; }
  void set_iteration(int j) noexcept { iteration_ = j; }

  double& at(std::size_t p, std::size_t i) { return data_[p * nd_ + i]; }
  double at(std::size_t p, std::size_t i) const { return data_[p * nd_ + i]; }

  std::span<double> point(std::size_t p) { return {data_.data() + p * nd_, nd_}; }
  std::span<const double> point(std::size_t p) const { return {data_.data() + p * nd_, nd_}; }

  const std::vector<double>& raw() const noexcept { return data_; }
  std::vector<double>& raw() noexcept { return data_; }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::size_t np_ = 0;
  std::size_t nd_ = 0;
  int iteration_ = 0;
  std::vector<double> data_;
};

/// Elite best fitness F* (maximization sense) and its coordinates R*.
struct BestRecord {
  double fstar = 0.0;
  std::vector<double> rstar;
  std::size_t found_at_point = 0;
  int found_at_iteration = 0;
  /// SAHC only: index of the run that produced the record.
  std::size_t found_at_run = 0;

  friend bool operator==(const BestRecord&, const BestRecord&) = default;
};

struct TracePoint {
  int iteration = 0;
  double best = 0.0;
  friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

struct RunResult {
  BestRecord best;
  long long n_eval = 0;
  int last_iteration = 0;
  std::vector<TracePoint> trace;
  double wall_time = 0.0;
  /// SAHC only: number of runs that were executed.
  std::size_t runs = 1;
};

/// Objective failure re-raised by an engine with its location in the run.
class RunError : public std::runtime_error {
 public:
  RunError(const std::string& what, std::size_t point, int iteration, std::size_t run = 0)
      : std::runtime_error(what), point_(point), iteration_(iteration), run_(run) {}

  std::size_t point() const noexcept { return point_; }
  int iteration() const noexcept { return iteration_; }
  std::size_t run() const noexcept { return run_; }

 private:
  std::size_t point_;
  int iteration_;
  std::size_t run_;
};

}  // namespace vso
