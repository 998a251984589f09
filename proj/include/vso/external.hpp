#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vso/objective.hpp"

namespace vso {

/// File-exchange contract for an external evaluator.
///
/// Before each call the candidate is written to `input_path` (one coordinate
/// per line, 17 significant digits). The command runs to completion and the
/// first line of `output_path` is read back as the fitness.
struct SubprocessObjectiveSpec {
  /// Executable (looked up on PATH when it has no slash) followed by fixed arguments.
  std::vector<std::string> command;
  std::filesystem::path input_path;
  std::filesystem::path output_path;
  /// Wall-clock limit per call, in seconds.
  double timeout = 60.0;
  /// When set, input_path is copied here on every strict improvement of F*.
  std::optional<std::filesystem::path> best_artifact_path;

  void validate() const;
};

enum class EvaluationErrorKind { spawn_failure, nonzero_exit, timeout, missing_output, unparsable_output };

std::string_view to_string(EvaluationErrorKind k) noexcept;

/// Base for every failure of an external evaluation. `diagnostics()` holds the
/// tail of the child's combined stdout/stderr, when any was captured.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(EvaluationErrorKind kind, const std::string& what, std::string diagnostics = {});
  EvaluationErrorKind kind() const noexcept { return kind_; }
  const std::string& diagnostics() const noexcept { return diagnostics_; }

 private:
  EvaluationErrorKind kind_;
  std::string diagnostics_;
};

class SpawnError : public EvaluationError {
 public:
  using EvaluationError::EvaluationError;
};
class NonzeroExitError : public EvaluationError {
 public:
  using EvaluationError::EvaluationError;
};
class TimeoutError : public EvaluationError {
 public:
  using EvaluationError::EvaluationError;
};
class MissingOutputError : public EvaluationError {
 public:
  using EvaluationError::EvaluationError;
};
class UnparsableOutputError : public EvaluationError {
 public:
  using EvaluationError::EvaluationError;
};

void write_input_file(const std::filesystem::path& path, std::span<const double> x);
std::vector<double> read_input_file(const std::filesystem::path& path);

/// Parses the first line as a real. Throws MissingOutputError or UnparsableOutputError.
double read_output_file(const std::filesystem::path& path);

struct ProcessOutcome {
  int exit_code = 0;
  std::string diagnostics;
};

/// Runs `command` in its own process group and waits up to `timeout` seconds.
/// Throws SpawnError, TimeoutError (after killing the group) or NonzeroExitError.
ProcessOutcome run_process(const std::vector<std::string>& command, double timeout);

/// Wraps the external program as a serial-only objective.
Objective subprocess_objective(SubprocessObjectiveSpec spec);

}  // namespace vso
