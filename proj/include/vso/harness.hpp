#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vso/benchmarks.hpp"
#include "vso/sahc.hpp"
#include "vso/space.hpp"
#include "vso/vso.hpp"

namespace vso {

enum class Algo { vso, sahc };
std::string_view to_string(Algo a) noexcept;
/// Throws ConfigError on anything but "vso" / "sahc".
Algo parse_algo(std::string_view s);

enum class ToleranceClass { macroscopic, tiny_residual, statistical, display };
std::string_view to_string(ToleranceClass c) noexcept;

/// One published result cell group.
struct ReferenceEntry {
  std::string table;
  std::string id;
  std::size_t nd = 0;
  std::string algo;  // "vso", "sahc" or "other"
  std::string label;
  double best = 0.0;
  std::string best_text;  // as printed
  std::optional<long long> n_eval;
  std::vector<long long> n_eval_accept;
  ToleranceClass tolerance_class = ToleranceClass::display;
  double tol = 1e-10;
  std::optional<double> spread;
  std::string source;
};

class ReferenceTable {
 public:
  /// Parses the comment-tolerant CSV layout of data/reference_tables.csv.
  /// Throws ConfigError with the offending line number.
  static ReferenceTable parse(std::string_view text);
  static ReferenceTable load(const std::filesystem::path& path);
  /// The table compiled into the library.
  static const ReferenceTable& embedded();

  const std::vector<ReferenceEntry>& entries() const noexcept { return entries_; }
  const ReferenceEntry* find(std::string_view id, std::size_t nd, Algo algo) const;
  /// Display-only rows for the same function and dimension.
  std::vector<const ReferenceEntry*> others(std::string_view id, std::size_t nd) const;

 private:
  std::vector<ReferenceEntry> entries_;
};

std::string_view embedded_reference_text() noexcept;
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

enum class VerdictStatus { pass, fail, unreferenced, skipped };
std::string_view to_string(VerdictStatus s) noexcept;

struct Verdict {
  VerdictStatus status = VerdictStatus::unreferenced;
  std::string detail;
  /// measured minus published evaluation count, when both exist.
  std::optional<long long> count_deviation;
  /// The count differs from the published one by exactly three iterations' worth of points.
  bool count_shifted = false;

  bool failed() const noexcept { return status == VerdictStatus::fail; }
};

/// SAHC rows: accepted evaluation band is [4, 4.8] x runs x Np.
inline constexpr double kSahcCountBandHigh = 4.8;
/// SAHC rows: measured distance to the optimum may be this many times the
/// published distance, plus the macroscopic rounding slack.
inline constexpr double kSahcGapFactor = 4.0;
/// Suite-wide limit on rows whose count is shifted by +/- 3 Np.
inline constexpr int kMaxShiftedRows = 2;

/// Pure verdict for one row. `np` is the engine's point count and `exact_max`
/// the entry's known optimum at `nd`.
Verdict compare_reference(const RunResult& result, const ReferenceEntry* ref, Algo algo, long long np,
                          double exact_max, int sahc_runs = 1000);

/// Non-default knobs. Any override except nd and seed makes verdicts "skipped".
struct SuiteOverrides {
  std::optional<std::size_t> nd;
  std::uint64_t seed = kDefaultSahcSeed;
  std::optional<double> rho;
  std::optional<int> runs;
  bool reset_per_run = false;

  bool changes_algorithm() const noexcept;
};

struct SuiteRow {
  std::string id;
  std::string title;
  std::size_t nd = 0;
  Algo algo = Algo::vso;
  long long np = 0;
  double fmax = 0.0;
  double exact_max = 0.0;
  std::optional<RunResult> result;
  std::string error;
  std::optional<ReferenceEntry> reference;
  Verdict verdict;
};

struct SuiteReport {
  std::string suite;
  Algo algo = Algo::vso;
  std::uint64_t seed = kDefaultSahcSeed;
  VsoConfig vso_config;
  SahcConfig sahc_config;
  std::vector<SuiteRow> rows;

  std::size_t count(VerdictStatus s) const noexcept;
  bool any_failure() const noexcept { return count(VerdictStatus::fail) > 0; }
};

using ProgressFn = std::function<void(const SuiteRow&)>;

VsoConfig vso_config_for(const SuiteOverrides& o);
SahcConfig sahc_config_for(const SuiteOverrides& o);

/// Runs one registry entry. Objective and engine errors become a failed row.
SuiteRow run_entry(const BenchmarkSpec& spec, Algo algo, const SuiteOverrides& o,
                   const ReferenceTable& ref = ReferenceTable::embedded());

/// Runs a caller-supplied objective over `ds`. When `reference_id` names a
/// registry entry its reference row and optimum are used for the verdict.
SuiteRow run_custom(const Objective& objective, const DecisionSpace& ds, Algo algo, const SuiteOverrides& o,
                    std::string id, const ReferenceTable& ref = ReferenceTable::embedded());

/// suite is "vpso", "gso" or "all". Throws UnknownBenchmark for other names.
SuiteReport run_suite(std::string_view suite, Algo algo, const SuiteOverrides& o = {},
                      const ReferenceTable& ref = ReferenceTable::embedded(), const ProgressFn& progress = {});

/// Fails every shifted-count row once more than kMaxShiftedRows are shifted.
void enforce_shift_limit(SuiteReport& report);

enum class ReportFormat { csv, markdown, jsonl };
ReportFormat parse_format(std::string_view s);

void emit_report(const SuiteReport& report, ReportFormat fmt, std::ostream& out);
/// Throws std::runtime_error on I/O failure.
void emit_report(const SuiteReport& report, ReportFormat fmt, const std::filesystem::path& path);

/// "iteration best" lines. Throws ConfigError on an empty trace.
void emit_trace(const RunResult& result, std::ostream& out);
void emit_trace(const RunResult& result, const std::filesystem::path& path);

/// %.17g, with inf / -inf / nan spelled out.
std::string format_full(double v);

}  // namespace vso
