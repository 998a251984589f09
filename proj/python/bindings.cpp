#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "vso/benchmarks.hpp"
#include "vso/harness.hpp"
#include "vso/sahc.hpp"
#include "vso/vso.hpp"

namespace py = pybind11;
using namespace vso;

namespace {

Objective wrap(const py::function& fn) {
  Objective o;
  o.serial_only = true;
  o.evaluate = [fn](std::span<const double> x) {
    py::gil_scoped_acquire gil;
    return fn(std::vector<double>(x.begin(), x.end())).cast<double>();
  };
  return o;
}

py::dict row_dict(const SuiteRow& r) {
  py::dict d;
  d["id"] = r.id;
  d["nd"] = r.nd;
  d["algo"] = std::string(to_string(r.algo));
  d["np"] = r.np;
  d["fmax"] = r.fmax;
  d["exact_max"] = r.exact_max;
  d["best"] = r.result ? py::cast(r.result->best.fstar) : py::none();
  d["rstar"] = r.result ? py::cast(r.result->best.rstar) : py::none();
  d["n_eval"] = r.result ? py::cast(r.result->n_eval) : py::none();
  d["published_best"] = r.reference ? py::cast(r.reference->best) : py::none();
  d["published_n_eval"] = r.reference && r.reference->n_eval ? py::cast(*r.reference->n_eval) : py::none();
  d["verdict"] = std::string(to_string(r.verdict.status));
  d["detail"] = r.verdict.detail;
  return d;
}

SuiteOverrides overrides(std::optional<std::size_t> nd, std::uint64_t seed) {
  SuiteOverrides o;
  o.nd = nd;
  o.seed = seed;
  return o;
}

}  // namespace

PYBIND11_MODULE(_vso, m) {
  m.doc() = "VSO and SAHC optimizers with the benchmark suites";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<UnknownBenchmark>(m, "UnknownBenchmark", PyExc_KeyError);
  py::register_exception<RunError>(m, "RunError", PyExc_RuntimeError);

  py::class_<VsoConfig>(m, "VsoConfig")
      .def(py::init<>())
      .def_readwrite("rho", &VsoConfig::rho)
      .def_readwrite("points_per_dim", &VsoConfig::points_per_dim)
      .def_readwrite("num_gammas", &VsoConfig::num_gammas)
      .def_readwrite("max_iterations", &VsoConfig::max_iterations)
      .def_readwrite("saturation_tol", &VsoConfig::saturation_tol);

  py::class_<SahcConfig>(m, "SahcConfig")
      .def(py::init<>())
      .def_readwrite("points_per_dim", &SahcConfig::points_per_dim)
      .def_readwrite("num_runs", &SahcConfig::num_runs)
      .def_readwrite("max_iterations", &SahcConfig::max_iterations)
      .def_readwrite("saturation_tol", &SahcConfig::saturation_tol)
      .def_readwrite("tweak_scale", &SahcConfig::tweak_scale)
      .def_readwrite("seed", &SahcConfig::seed)
      .def_readwrite("global_best_across_runs", &SahcConfig::global_best_across_runs);

  py::class_<RunResult>(m, "RunResult")
      .def_property_readonly("best", [](const RunResult& r) { return r.best.fstar; })
      .def_property_readonly("rstar", [](const RunResult& r) { return r.best.rstar; })
      .def_readonly("n_eval", &RunResult::n_eval)
      .def_readonly("last_iteration", &RunResult::last_iteration)
      .def_readonly("runs", &RunResult::runs)
      .def_readonly("wall_time", &RunResult::wall_time)
      .def_property_readonly("trace",
                             [](const RunResult& r) {
                               std::vector<std::pair<int, double>> t;
                               for (const auto& p : r.trace) t.emplace_back(p.iteration, p.best);
                               return t;
                             })
      .def("__repr__", [](const RunResult& r) {
        std::ostringstream os;
        os << "RunResult(best=" << format_full(r.best.fstar) << ", n_eval=" << r.n_eval << ")";
        return os.str();
      });

  m.def(
      "run_vso",
      [](const py::function& f, std::vector<double> lo, std::vector<double> hi, const VsoConfig& cfg) {
        return run_vso(wrap(f), make_decision_space(std::move(lo), std::move(hi)), cfg);
      },
      py::arg("objective"), py::arg("lo"), py::arg("hi"), py::arg("config") = VsoConfig{},
      "Maximizes objective(list[float]) -> float over the box [lo, hi].");

  m.def(
      "run_sahc",
      [](const py::function& f, std::vector<double> lo, std::vector<double> hi, const SahcConfig& cfg) {
        return run_sahc(wrap(f), make_decision_space(std::move(lo), std::move(hi)), cfg);
      },
      py::arg("objective"), py::arg("lo"), py::arg("hi"), py::arg("config") = SahcConfig{});

  m.def("benchmarks", [] {
    std::vector<std::string> ids;
    for (const auto& b : registry()) ids.push_back(b.id);
    return ids;
  });

  m.def(
      "evaluate",
      [](const std::string& id, const std::vector<double>& x, std::uint64_t seed) {
        const auto& b = lookup(id);
        return make_objective(b, x.size(), seed)(x);
      },
      py::arg("id"), py::arg("x"), py::arg("seed") = kDefaultSahcSeed);

  m.def(
      "benchmark_info",
      [](const std::string& id, std::optional<std::size_t> nd) {
        const auto& b = lookup(id);
        const std::size_t n = nd.value_or(b.nd_default);
        b.check_nd(n);
        const auto ds = b.space(n);
        py::dict d;
        d["id"] = b.id;
        d["title"] = b.title;
        d["nd"] = n;
        d["lo"] = ds.mins();
        d["hi"] = ds.maxs();
        d["fmax"] = b.fmax(n);
        d["exact_max"] = b.exact_max(n);
        d["maximizer"] = b.maximizer(n);
        return d;
      },
      py::arg("id"), py::arg("nd") = py::none());

  m.def(
      "run_benchmark",
      [](const std::string& id, const std::string& algo, std::optional<std::size_t> nd, std::uint64_t seed) {
        return row_dict(run_entry(lookup(id), parse_algo(algo), overrides(nd, seed)));
      },
      py::arg("id"), py::arg("algo") = "vso", py::arg("nd") = py::none(), py::arg("seed") = kDefaultSahcSeed);

  m.def(
      "run_suite",
      [](const std::string& suite, const std::string& algo, std::optional<std::size_t> nd, std::uint64_t seed) {
        const auto rep = run_suite(suite, parse_algo(algo), overrides(nd, seed));
        py::list rows;
        for (const auto& r : rep.rows) rows.append(row_dict(r));
        return rows;
      },
      py::arg("suite") = "gso", py::arg("algo") = "vso", py::arg("nd") = py::none(),
      py::arg("seed") = kDefaultSahcSeed);

  m.attr("DEFAULT_SEED") = kDefaultSahcSeed;
}
