#include "vso/space.hpp"

#include <cmath>

namespace vso {

DecisionSpace::DecisionSpace(std::vector<double> mins, std::vector<double> maxs)
    : mins_(std::move(mins)), maxs_(std::move(maxs)) {
  if (mins_.empty() || maxs_.empty()) throw ConfigError("empty bound vectors");
  if (mins_.size() != maxs_.size()) {
    throw ConfigError("dimension mismatch: " + std::to_string(mins_.size()) + " mins vs " +
                      std::to_string(maxs_.size()) + " maxs");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < mins_.size(); ++i) {
    if (!std::isfinite(mins_[i]) || !std::isfinite(maxs_[i])) {
      throw ConfigError("non-finite bound at index " + std::to_string(i));
    }
    if (!(mins_[i] < maxs_[i])) throw ConfigError("degenerate bound at index " + std::to_string(i));
    const double w = maxs_[i] - mins_[i];
    sum += w * w;
  }
  diag_length_ = std::sqrt(sum);
}

bool DecisionSpace::contains(std::span<const double> x) const noexcept {
  if (x.size() != nd()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= mins_[i] && x[i] <= maxs_[i])) return false;
  }
  return true;
}

DecisionSpace make_decision_space(std::vector<double> mins, std::vector<double> maxs) {
  return DecisionSpace(std::move(mins), std::move(maxs));
}

DecisionSpace make_cube(std::size_t nd, double lo, double hi) {
  return DecisionSpace(std::vector<double>(nd, lo), std::vector<double>(nd, hi));
}

std::vector<double> principal_diagonal_point(const DecisionSpace& ds, double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw ConfigError("gamma must lie in [0, 1], got " + std::to_string(gamma));
  }
  std::vector<double> d(ds.nd());
  for (std::size_t i = 0; i < ds.nd(); ++i) {
    // Endpoints are returned exactly rather than through min + 1*(max-min).
    if (gamma == 0.0) {
      d[i] = ds.min(i);
    } else if (gamma == 1.0) {
      d[i] = ds.max(i);
    } else {
      d[i] = ds.min(i) + gamma * ds.width(i);
    }
  }
  return d;
}

}  // namespace vso
