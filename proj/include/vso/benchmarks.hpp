#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vso/objective.hpp"
#include "vso/space.hpp"

namespace vso {

class UnknownBenchmark : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Suite { vpso, gso };

std::string_view to_string(Suite s) noexcept;

/// One suite entry. Every objective is in maximization sense.
struct BenchmarkSpec {
  std::string id;     // "gso/f8", "vpso/cosine_mixture"
  std::string title;  // human-readable name
  Suite suite = Suite::gso;
  std::size_t nd_default = 30;
  bool nd_fixed = false;
  bool deterministic = true;

  // Per-axis box, or per-axis lists when the axes differ (f17).
  std::vector<double> lo;
  std::vector<double> hi;

  // Published maximum as printed in the result tables; may be rounded.
  double fmax_base = 0.0;
  // Scale fmax linearly with nd (cosine mixture: 0.1 * nd).
  double fmax_per_dim = 0.0;
  // Exact optimum value where the published one is rounded (known-optimum
  // literature constant); absent when the published value is exact.
  std::optional<double> exact_max_base;
  double exact_max_per_dim = 0.0;

  // A known maximizer; coordinates repeat per axis for n-dimensional entries.
  std::vector<double> xstar;

  DecisionSpace space(std::size_t nd) const;
  DecisionSpace space() const { return space(nd_default); }
  double fmax(std::size_t nd) const;
  double fmax() const { return fmax(nd_default); }
  /// Exact optimum value; equals fmax() when the published value is exact.
  double exact_max(std::size_t nd) const;
  std::optional<std::vector<double>> maximizer(std::size_t nd) const;
  /// Throws ConfigError when nd is not valid for this entry.
  void check_nd(std::size_t nd) const;
};

/// Six v-PSO entries followed by gso/f1 .. gso/f23.
const std::vector<BenchmarkSpec>& registry();
std::vector<const BenchmarkSpec*> suite_entries(Suite s);
/// Accepts "gso/f8" and the bare "f8" / "ackley" forms. Throws UnknownBenchmark.
const BenchmarkSpec& lookup(std::string_view id);

/// Evaluates a v-PSO function by short name ("ackley", "cosine_mixture",
/// "exponential", "griewank", "rastrigin", "schwefel").
double eval_vpso(std::string_view name, std::span<const double> x);

/// Evaluates a GSO suite function by short name ("f1" .. "f23"). f7 draws one
/// uniform deviate from `noise` per call and throws ConfigError without one.
double eval_gso(std::string_view name, std::span<const double> x, UniformSource* noise = nullptr);

/// Penalty term shared by f12 and f13.
double penalty_u(double x, double a, double k, double m);

struct HartmanTable {
  std::vector<std::vector<double>> a;  // 4 x nd
  std::array<double, 4> c{};
  std::vector<std::vector<double>> p;  // 4 x nd
};

struct ConstantTables {
  std::array<std::array<double, 25>, 2> foxholes{};
  std::array<double, 11> kowalik_a{};
  std::array<double, 11> kowalik_b{};
  HartmanTable hartman3;
  HartmanTable hartman6;
  std::array<std::array<double, 4>, 10> shekel_a{};
  std::array<double, 10> shekel_c{};
};

const ConstantTables& constant_tables();

/// Binds a registry entry to an evaluation closure. `noise_seed` seeds the
/// stream owned by the closure for non-deterministic entries (gso/f7).
Objective make_objective(const BenchmarkSpec& spec, std::size_t nd, std::uint64_t noise_seed = 0);

}  // namespace vso
