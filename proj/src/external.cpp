#include "vso/external.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>

#include "vso/space.hpp"

extern char** environ;

namespace vso {
namespace {

constexpr std::size_t kDiagnosticsLimit = 4096;

void append_tail(std::string& buf, const char* data, std::size_t n) {
  buf.append(data, n);
  if (buf.size() > kDiagnosticsLimit) buf.erase(0, buf.size() - kDiagnosticsLimit);
}

std::string describe(const std::vector<std::string>& command) {
  std::string s;
  for (const auto& part : command) {
    if (!s.empty()) s += ' ';
    s += part;
  }
  return s;
}

class Fd {
 public:
  explicit Fd(int fd = -1) : fd_(fd) {}
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  ~Fd() { reset(); }
  int get() const { return fd_; }
  void reset() {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }

 private:
  int fd_;
};

}  // namespace

void SubprocessObjectiveSpec::validate() const {
  if (command.empty() || command.front().empty()) throw ConfigError("external command is empty");
  if (input_path.empty() || output_path.empty()) throw ConfigError("external input and output paths are required");
  if (input_path == output_path) throw ConfigError("external input and output paths must differ");
  if (!(timeout > 0.0) || !std::isfinite(timeout)) throw ConfigError("external timeout must be positive");
}

std::string_view to_string(EvaluationErrorKind k) noexcept {
  switch (k) {
    case EvaluationErrorKind::spawn_failure: return "spawn failure";
    case EvaluationErrorKind::nonzero_exit: return "nonzero exit";
    case EvaluationErrorKind::timeout: return "timeout";
    case EvaluationErrorKind::missing_output: return "missing output";
    case EvaluationErrorKind::unparsable_output: return "unparsable output";
  }
  return "unknown";
}

EvaluationError::EvaluationError(EvaluationErrorKind kind, const std::string& what, std::string diagnostics)
    : std::runtime_error(what), kind_(kind), diagnostics_(std::move(diagnostics)) {}

void write_input_file(const std::filesystem::path& path, std::span<const double> x) {
  std::unique_ptr<std::FILE, int (*)(std::FILE*)> f(std::fopen(path.c_str(), "w"), &std::fclose);
  if (!f) throw std::runtime_error("cannot open input file " + path.string() + ": " + std::strerror(errno));
  for (double v : x) std::fprintf(f.get(), "%.17g\n", v);
  if (std::fflush(f.get()) != 0) throw std::runtime_error("cannot write input file " + path.string());
}

std::vector<double> read_input_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<double> x;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    x.push_back(std::stod(line));
  }
  return x;
}

double read_output_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingOutputError(EvaluationErrorKind::missing_output, "missing output: " + path.string());
  std::string line;
  std::getline(in, line);
  const auto first = line.find_first_not_of(" \t\r");
  const auto last = line.find_last_not_of(" \t\r");
  if (first == std::string::npos) {
    throw UnparsableOutputError(EvaluationErrorKind::unparsable_output,
                                "unparsable output: first line of " + path.string() + " is empty");
  }
  const char* b = line.data() + first;
  const char* e = line.data() + last + 1;
  if (*b == '+') ++b;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(b, e, value);
  if (ec != std::errc() || ptr != e) {
    throw UnparsableOutputError(EvaluationErrorKind::unparsable_output,
                                "unparsable output: '" + line + "' in " + path.string());
  }
  return value;
}

ProcessOutcome run_process(const std::vector<std::string>& command, double timeout) {
  if (command.empty()) throw SpawnError(EvaluationErrorKind::spawn_failure, "spawn failure: empty command");

  int pipefd[2];
  if (::pipe2(pipefd, O_CLOEXEC) != 0) {
    throw SpawnError(EvaluationErrorKind::spawn_failure, std::string("spawn failure: pipe: ") + std::strerror(errno));
  }
  Fd read_end(pipefd[0]);
  Fd write_end(pipefd[1]);

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_addopen(&actions, STDIN_FILENO, "/dev/null", O_RDONLY, 0);
  posix_spawn_file_actions_adddup2(&actions, write_end.get(), STDOUT_FILENO);
  posix_spawn_file_actions_adddup2(&actions, write_end.get(), STDERR_FILENO);
  posix_spawnattr_t attr;
  posix_spawnattr_init(&attr);
  posix_spawnattr_setflags(&attr, POSIX_SPAWN_SETPGROUP);
  posix_spawnattr_setpgroup(&attr, 0);

  std::vector<char*> argv;
  argv.reserve(command.size() + 1);
  for (const auto& a : command) argv.push_back(const_cast<char*>(a.c_str()));
  argv.push_back(nullptr);

  pid_t pid = -1;
  const int rc = ::posix_spawnp(&pid, argv[0], &actions, &attr, argv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  posix_spawnattr_destroy(&attr);
  write_end.reset();
  if (rc != 0) {
    throw SpawnError(EvaluationErrorKind::spawn_failure,
                     "spawn failure: " + describe(command) + ": " + std::strerror(rc));
  }

  ProcessOutcome out;
  const auto deadline = std::chrono::steady_clock::now() + std::chrono::duration<double>(timeout);
  bool pipe_open = true;
  int status = 0;
  bool exited = false;
  char buf[1024];

  while (true) {
    const pid_t w = ::waitpid(pid, &status, WNOHANG);
    if (w == pid) {
      exited = true;
      break;
    }
    const auto now = std::chrono::steady_clock::now();
    if (now >= deadline) break;
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count();
    const int wait_ms = static_cast<int>(std::min<long long>(left + 1, 20));
    if (pipe_open) {
      pollfd pfd{read_end.get(), POLLIN, 0};
      if (::poll(&pfd, 1, wait_ms) > 0) {
        const ssize_t n = ::read(read_end.get(), buf, sizeof buf);
        if (n > 0) {
          append_tail(out.diagnostics, buf, static_cast<std::size_t>(n));
        } else if (n == 0) {
          pipe_open = false;
        }
      }
    } else {
      ::usleep(static_cast<useconds_t>(wait_ms) * 1000);
    }
  }

  if (!exited) {
    ::kill(-pid, SIGKILL);
    ::waitpid(pid, &status, 0);
    throw TimeoutError(EvaluationErrorKind::timeout,
                       "timeout: " + describe(command) + " exceeded " + std::to_string(timeout) + " s",
                       out.diagnostics);
  }

  // Drain whatever the child wrote just before exiting.
  if (pipe_open) {
    ::fcntl(read_end.get(), F_SETFL, O_NONBLOCK);
    ssize_t n;
    while ((n = ::read(read_end.get(), buf, sizeof buf)) > 0) append_tail(out.diagnostics, buf, static_cast<std::size_t>(n));
  }

  if (WIFEXITED(status)) {
    out.exit_code = WEXITSTATUS(status);
  } else if (WIFSIGNALED(status)) {
    out.exit_code = 128 + WTERMSIG(status);
  }
  if (out.exit_code != 0) {
    throw NonzeroExitError(EvaluationErrorKind::nonzero_exit,
                           "nonzero exit: " + describe(command) + " returned " + std::to_string(out.exit_code),
                           out.diagnostics);
  }
  return out;
}

Objective subprocess_objective(SubprocessObjectiveSpec spec) {
  spec.validate();
  auto shared = std::make_shared<const SubprocessObjectiveSpec>(std::move(spec));

  Objective obj;
  obj.serial_only = true;
  obj.evaluate = [shared](std::span<const double> x) {
    std::error_code ec;
    std::filesystem::remove(shared->output_path, ec);
    write_input_file(shared->input_path, x);
    run_process(shared->command, shared->timeout);
    return read_output_file(shared->output_path);
  };
  if (shared->best_artifact_path) {
    obj.on_new_best = [shared] {
      std::filesystem::copy_file(shared->input_path, *shared->best_artifact_path,
                                 std::filesystem::copy_options::overwrite_existing);
    };
  }
  return obj;
}

}  // namespace vso
