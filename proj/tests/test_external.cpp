#include <unistd.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "vso/benchmarks.hpp"
#include "vso/external.hpp"
#include "vso/vso.hpp"

namespace fs = std::filesystem;
using namespace vso;

namespace {

std::string shim(const char* name) { return (fs::path(VSO_SHIM_DIR) / name).string(); }

struct Workdir {
  fs::path dir;
  Workdir() {
    static int counter = 0;
    dir = fs::temp_directory_path() /
          ("vso_ext_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(dir);
  }
  ~Workdir() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  fs::path operator/(const char* name) const { return dir / name; }
};

SubprocessObjectiveSpec spec_for(const Workdir& w, std::vector<std::string> cmd) {
  SubprocessObjectiveSpec s;
  s.command = std::move(cmd);
  s.input_path = w / "in.txt";
  s.output_path = w / "out.txt";
  s.timeout = 5.0;
  return s;
}

std::size_t line_count(const fs::path& p) {
  std::ifstream in(p);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) ++n;
  return n;
}

}  // namespace

TEST_CASE("input files round-trip every bit") {
  Workdir w;
  const std::vector<double> x{0.1, -1e-300, 12569.486618164879, 3.0, -0.0, 1.0 / 3.0};
  write_input_file(w / "x.txt", x);
  const auto back = read_input_file(w / "x.txt");
  REQUIRE(back.size() == x.size());
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(back[i] == x[i]);
  CHECK(line_count(w / "x.txt") == x.size());
}

TEST_CASE("output parsing") {
  Workdir w;
  auto put = [&](const std::string& text) {
    std::ofstream(w / "o.txt") << text;
    return w / "o.txt";
  };
  CHECK(read_output_file(put("  -2.5e3 \nignored\n")) == -2500.0);
  CHECK(read_output_file(put("+7\n")) == 7.0);
  CHECK(read_output_file(put("42")) == 42.0);
  CHECK_THROWS_AS(read_output_file(put("12abc\n")), UnparsableOutputError);
  CHECK_THROWS_AS(read_output_file(put("\n3\n")), UnparsableOutputError);
  CHECK_THROWS_AS(read_output_file(w / "absent.txt"), MissingOutputError);
}

TEST_CASE("spec validation") {
  Workdir w;
  auto s = spec_for(w, {});
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s = spec_for(w, {"true"});
  s.output_path = s.input_path;
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s = spec_for(w, {"true"});
  s.timeout = 0.0;
  CHECK_THROWS_AS(s.validate(), ConfigError);
}

TEST_CASE("external sphere matches the in-process benchmark") {
  Workdir w;
  const auto s = spec_for(w, {"sh", shim("sphere.sh"), (w / "in.txt").string(), (w / "out.txt").string()});
  const Objective ext = subprocess_objective(s);
  CHECK(ext.serial_only);
  const auto& f1 = lookup("gso/f1");
  const Objective local = make_objective(f1, 2);
  VsoConfig c;
  c.points_per_dim = 4;
  c.num_gammas = 4;
  const auto ds = make_cube(2, -100.0, 100.0);
  const auto a = run_vso(ext, ds, c);
  const auto b = run_vso(local, ds, c);
  CHECK(a.best.fstar == b.best.fstar);
  CHECK(a.best.rstar == b.best.rstar);
  CHECK(a.n_eval == b.n_eval);
  CHECK(a.last_iteration == b.last_iteration);
}

TEST_CASE("one process per evaluation") {
  Workdir w;
  const auto counter = (w / "count.txt").string();
  const auto s = spec_for(w, {"sh", shim("constant.sh"), (w / "out.txt").string(), "1.5", counter});
  const auto r = run_vso(subprocess_objective(s), make_cube(1, 0.0, 1.0), [] {
    VsoConfig c;
    c.points_per_dim = 2;
    c.num_gammas = 4;
    return c;
  }());
  CHECK(r.best.fstar == 1.5);
  CHECK(static_cast<long long>(line_count(counter)) == r.n_eval);
  CHECK(r.n_eval == 8 * 7);
}

TEST_CASE("each failure mode has its own error") {
  Workdir w;
  const std::string out = (w / "out.txt").string();
  const std::vector<double> x{1.0, 2.0};

  SUBCASE("spawn failure") {
    const auto obj = subprocess_objective(spec_for(w, {"/nonexistent/evaluator"}));
    CHECK_THROWS_AS(obj(x), SpawnError);
  }
  SUBCASE("nonzero exit keeps diagnostics") {
    const auto obj = subprocess_objective(spec_for(w, {"sh", shim("fail.sh")}));
    try {
      obj(x);
      FAIL("expected NonzeroExitError");
    } catch (const NonzeroExitError& e) {
      CHECK(e.kind() == EvaluationErrorKind::nonzero_exit);
      CHECK(e.diagnostics().find("evaluator crashed") != std::string::npos);
      CHECK(std::string(e.what()).find("3") != std::string::npos);
    }
  }
  SUBCASE("timeout") {
    auto s = spec_for(w, {"sh", shim("slow.sh")});
    s.timeout = 0.3;
    const auto obj = subprocess_objective(s);
    const auto t0 = std::chrono::steady_clock::now();
    CHECK_THROWS_AS(obj(x), TimeoutError);
    CHECK(std::chrono::steady_clock::now() - t0 < std::chrono::seconds(5));
  }
  SUBCASE("missing output") {
    std::ofstream(out) << "stale 1.0\n";
    const auto obj = subprocess_objective(spec_for(w, {"sh", shim("silent.sh")}));
    CHECK_THROWS_AS(obj(x), MissingOutputError);
  }
  SUBCASE("unparsable output") {
    const auto obj = subprocess_objective(spec_for(w, {"sh", shim("garbage.sh"), out}));
    CHECK_THROWS_AS(obj(x), UnparsableOutputError);
  }
  SUBCASE("engine wraps the failure") {
    const auto obj = subprocess_objective(spec_for(w, {"sh", shim("fail.sh")}));
    CHECK_THROWS_AS(run_vso(obj, make_cube(1, 0.0, 1.0)), RunError);
  }
}

TEST_CASE("best snapshot holds the input of the best point") {
  Workdir w;
  auto s = spec_for(w, {"sh", shim("sphere.sh"), (w / "in.txt").string(), (w / "out.txt").string()});
  s.best_artifact_path = w / "best.txt";
  VsoConfig c;
  c.points_per_dim = 4;
  c.num_gammas = 4;
  const auto r = run_vso(subprocess_objective(s), make_cube(2, -3.0, 5.0), c);
  REQUIRE(fs::exists(w / "best.txt"));
  CHECK(read_input_file(w / "best.txt") == r.best.rstar);
}
