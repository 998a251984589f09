#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>

namespace vso {

/// Source of uniform deviates on [0, 1).
class UniformSource {
 public:
  virtual ~UniformSource() = default;
  virtual double next() = 0;

  /// a + (b - a) * U, so the result lies in [a, b).
  double uniform(double a, double b) { return a + (b - a) * next(); }
};

/// Derives the seed of substream `stream` from a root seed (splitmix64 finalizer
/// applied to root + golden-ratio increment * (stream + 1)).
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) noexcept;

/// Portable seeded stream: std::mt19937_64 (fully specified by the standard)
/// with the top 53 bits mapped to [0, 1). Identical sequences on every platform.
class Rng final : public UniformSource {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t root, std::uint64_t stream) : engine_(derive_seed(root, stream)) {}

  double next() override { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// An objective to be maximized.
struct Objective {
  std::function<double(std::span<const double>)> evaluate;
  /// Set when evaluations must never overlap (fixed exchange files, shared state).
  bool serial_only = false;
  /// Called by the engines right after a strictly better F* is recorded.
  std::function<void()> on_new_best;

  double operator()(std::span<const double> x) const { return evaluate(x); }
};

}  // namespace vso
