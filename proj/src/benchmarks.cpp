#include "vso/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <unordered_map>

namespace vso {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

void require_nd(std::string_view name, std::span<const double> x, std::size_t nd) {
  if (x.size() != nd) {
    throw ConfigError(std::string(name) + ": expected " + std::to_string(nd) + " coordinates, got " +
                      std::to_string(x.size()));
  }
}

void require_some(std::string_view name, std::span<const double> x) {
  if (x.empty()) throw ConfigError(std::string(name) + ": empty coordinate vector");
}

// ---------------------------------------------------------------- v-PSO suite

double ackley(std::span<const double> x) {
  double sq = 0.0, cs = 0.0;
  for (double xi : x) {
    sq += xi * xi;
    cs += std::cos(2.0 * kPi * xi);
  }
  const double n = static_cast<double>(x.size());
  return 20.0 * std::exp(-0.2 * std::sqrt(sq / n)) + std::exp(cs / n) - 20.0 - kE;
}

double cosine_mixture(std::span<const double> x) {
  double sq = 0.0, cs = 0.0;
  for (double xi : x) {
    sq += xi * xi;
    cs += std::cos(5.0 * kPi * xi);
  }
  return -sq + 0.1 * cs;
}

double exponential(std::span<const double> x) {
  double sq = 0.0;
  for (double xi : x) sq += xi * xi;
  return std::exp(-0.5 * sq);
}

double griewank_shifted(std::span<const double> x, double shift) {
  double sum = 0.0, prod = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i] - shift;
    sum += xi * xi;
    prod *= std::cos(xi / std::sqrt(static_cast<double>(i + 1)));
  }
  return -(sum / 4000.0 - prod + 1.0);
}

double rastrigin(std::span<const double> x) {
  double z = 0.0;
  for (double xi : x) z += xi * xi - 10.0 * std::cos(2.0 * kPi * xi) + 10.0;
  return -z;
}

double schwefel_vpso(std::span<const double> x) {
  double z = 0.0;
  for (double xi : x) z += xi * std::sin(std::sqrt(std::abs(xi)));
  return -418.9829 * static_cast<double>(x.size()) + z;
}

// ------------------------------------------------------------------ GSO suite

double f1(std::span<const double> x) {
  double z = 0.0;
  for (double xi : x) z += xi * xi;
  return -z;
}

double f2(std::span<const double> x) {
  double sum = 0.0, prod = 1.0;
  for (double xi : x) {
    sum += std::abs(xi);
    prod *= std::abs(xi);
  }
  return -(sum + prod);
}

double f3(std::span<const double> x) {
  double z = 0.0, partial = 0.0;
  for (double xi : x) {
    partial += xi;
    z += partial * partial;
  }
  return -z;
}

double f4(std::span<const double> x) {
  double m = 0.0;
  for (double xi : x) m = std::max(m, std::abs(xi));
  return -m;
}

double f5(std::span<const double> x) {
  double z = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double a = x[i + 1] - x[i] * x[i];
    const double t = 100.0 * a * a + (x[i] - 1.0);
    z += t * t;
  }
  return -z;
}

double f6(std::span<const double> x) {
  double z = 0.0;
  for (double xi : x) {
    const double s = std::floor(xi + 0.5);
    z += s * s;
  }
  return -z;
}

double f7(std::span<const double> x, UniformSource& noise) {
  double z = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double x2 = x[i] * x[i];
    z += static_cast<double>(i + 1) * x2 * x2;
  }
  return -z - noise.uniform(0.0, 1.0);
}

double f8(std::span<const double> x) {
  double z = 0.0;
  for (double xi : x) z -= xi * std::sin(std::sqrt(std::abs(xi)));
  return -z;
}

double f9(std::span<const double> x) {
  double z = 0.0;
  for (double xi : x) {
    const double t = xi * xi - 10.0 * std::cos(2.0 * kPi * xi) + 10.0;
    z += t * t;
  }
  return -z;
}

double f10(std::span<const double> x) { return ackley(x); }

double f11(std::span<const double> x) { return griewank_shifted(x, 100.0); }

double f12(std::span<const double> x) {
  const std::size_t n = x.size();
  auto y = [](double xi) { return 1.0 + (xi + 1.0) / 4.0; };
  double s1 = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double yi = y(x[i]) - 1.0;
    const double sn = std::sin(kPi * y(x[i + 1]));
    s1 += yi * yi * (1.0 + 10.0 * sn * sn);
  }
  const double s0 = std::sin(kPi * y(x[0]));
  const double yn = y(x[n - 1]) - 1.0;
  s1 = kPi * (s1 + 10.0 * s0 * s0 + yn * yn) / static_cast<double>(n);
  double s2 = 0.0;
  for (double xi : x) s2 += penalty_u(xi, 10.0, 100.0, 4.0);
  return -(s1 + s2);
}

double f13(std::span<const double> x) {
  const std::size_t n = x.size();
  double s1 = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double d = x[i] - 1.0;
    const double sn = std::sin(3.0 * kPi * x[i + 1]);
    s1 += d * d * (1.0 + sn * sn);
  }
  const double s0 = std::sin(3.0 * kPi * x[0]);
  const double dn = x[n - 1] - 1.0;
  const double sl = std::sin(2.0 * kPi * x[n - 1]);
  s1 += s0 * s0 + dn * dn * (1.0 + sl * sl);
  double s2 = 0.0;
  for (double xi : x) s2 += penalty_u(xi, 5.0, 100.0, 4.0);
  return -(s1 / 10.0 + s2);
}

double f14(std::span<const double> x) {
  const auto& a = constant_tables().foxholes;
  double sum = 0.0;
  for (std::size_t j = 0; j < 25; ++j) {
    double inner = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
      const double d = x[i] - a[i][j];
      const double d2 = d * d;
      inner += d2 * d2 * d2;
    }
    sum += 1.0 / (static_cast<double>(j + 1) + inner);
  }
  return -1.0 / (0.002 + sum);
}

double f15(std::span<const double> x) {
  const auto& t = constant_tables();
  double z = 0.0;
  for (std::size_t j = 0; j < 11; ++j) {
    const double b = t.kowalik_b[j];
    const double num = x[0] * (b * b + b * x[1]);
    const double den = b * b + b * x[2] + x[3];
    const double r = t.kowalik_a[j] - num / den;
    z += r * r;
  }
  return -z;
}

double f16(std::span<const double> x) {
  const double x1 = x[0], x2 = x[1];
  const double x1s = x1 * x1, x2s = x2 * x2;
  const double z = 4.0 * x1s - 2.1 * x1s * x1s + x1s * x1s * x1s / 3.0 + x1 * x2 - 4.0 * x2s +
                   4.0 * x2s * x2s;
  return -z;
}

double f17(std::span<const double> x) {
  const double x1 = x[0], x2 = x[1];
  const double t = x2 - 5.1 * x1 * x1 / (4.0 * kPi * kPi) + 5.0 * x1 / kPi - 6.0;
  return -(t * t + 10.0 * (1.0 - 1.0 / (8.0 * kPi)) * std::cos(x1) + 10.0);
}

double f18(std::span<const double> x) {
  const double x1 = x[0], x2 = x[1];
  const double a = x1 + x2 + 1.0;
  const double b = 2.0 * x1 - 3.0 * x2;
  const double t1 =
      1.0 + a * a * (19.0 - 14.0 * x1 + 3.0 * x1 * x1 - 14.0 * x2 + 6.0 * x1 * x2 + 3.0 * x2 * x2);
  const double t2 = 30.0 + b * b * (18.0 - 32.0 * x1 + 12.0 * x1 * x1 + 48.0 * x2 - 36.0 * x1 * x2 +
                                    27.0 * x2 * x2);
  return -(t1 * t2);
}

double hartman(std::span<const double> x, const HartmanTable& t) {
  double z = 0.0;
  for (std::size_t j = 0; j < 4; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = x[i] - t.p[j][i];
      s += t.a[j][i] * d * d;
    }
    z += t.c[j] * std::exp(-s);
  }
  return z;
}

double shekel(std::span<const double> x, std::size_t m) {
  const auto& t = constant_tables();
  double z = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      const double d = x[i] - t.shekel_a[j][i];
      s += d * d;
    }
    z += 1.0 / (s + t.shekel_c[j]);
  }
  return z;
}

ConstantTables build_tables() {
  ConstantTables t;
  const double ring[5] = {-32.0, -16.0, 0.0, 16.0, 32.0};
  for (std::size_t j = 0; j < 25; ++j) {
    t.foxholes[0][j] = ring[j % 5];
    t.foxholes[1][j] = ring[j / 5];
  }

  t.kowalik_a = {0.1957, 0.1947, 0.1735, 0.1600, 0.0844, 0.0627,
                 0.0456, 0.0342, 0.0323, 0.0235, 0.0246};
  const double kb_inv[11] = {0.25, 0.50, 1.00, 2.00, 4.00, 6.00, 8.00, 10.0, 12.0, 14.0, 16.0};
  for (std::size_t j = 0; j < 11; ++j) t.kowalik_b[j] = 1.0 / kb_inv[j];

  t.hartman3.a = {{3.0, 10.0, 30.0}, {0.1, 10.0, 35.0}, {3.0, 10.0, 30.0}, {0.1, 10.0, 35.0}};
  t.hartman3.c = {1.0, 1.2, 3.0, 3.2};
  t.hartman3.p = {{0.36890, 0.1170, 0.2673},
                  {0.46990, 0.4387, 0.7470},
                  {0.10910, 0.8732, 0.5547},
                  {0.03815, 0.5743, 0.8828}};

  t.hartman6.a = {{10.0, 3.00, 17.0, 3.5, 1.7, 8.0},
                  {0.05, 10.0, 17.0, 0.1, 8.0, 14.0},
                  {3.00, 3.50, 1.70, 10.0, 17.0, 8.0},
                  {17.0, 8.00, 0.05, 10.0, 0.1, 14.0}};
  t.hartman6.c = {1.0, 1.2, 3.0, 3.2};
  t.hartman6.p = {{0.13120, 0.1696, 0.5569, 0.01240, 0.8283, 0.5886},
                  {0.23290, 0.4135, 0.8307, 0.37360, 0.1004, 0.9991},
                  {0.23480, 0.1415, 0.3522, 0.28830, 0.3047, 0.6650},
                  {0.40470, 0.8828, 0.8732, 0.57430, 0.1091, 0.0381}};

  t.shekel_a = {{{4, 4, 4, 4},
                 {1, 1, 1, 1},
                 {8, 8, 8, 8},
                 {6, 6, 6, 6},
                 {3, 7, 3, 7},
                 {2, 9, 2, 9},
                 {5, 5, 3, 3},
                 {8, 1, 8, 1},
                 {6, 2, 6, 2},
                 {7, 3.6, 7, 3.6}}};
  t.shekel_c = {0.1, 0.2, 0.2, 0.4, 0.4, 0.6, 0.3, 0.7, 0.5, 0.5};
  return t;
}

using Plain = double (*)(std::span<const double>);

struct GsoEntry {
  Plain fn;         // null for f7
  std::size_t nd;   // 0 for n-dimensional entries
};

const std::unordered_map<std::string_view, GsoEntry>& gso_table() {
  static const std::unordered_map<std::string_view, GsoEntry> table = {
      {"f1", {f1, 0}},
      {"f2", {f2, 0}},
      {"f3", {f3, 0}},
      {"f4", {f4, 0}},
      {"f5", {f5, 0}},
      {"f6", {f6, 0}},
      {"f7", {nullptr, 0}},
      {"f8", {f8, 0}},
      {"f9", {f9, 0}},
      {"f10", {f10, 0}},
      {"f11", {f11, 0}},
      {"f12", {f12, 0}},
      {"f13", {f13, 0}},
      {"f14", {f14, 2}},
      {"f15", {f15, 4}},
      {"f16", {f16, 2}},
      {"f17", {f17, 2}},
      {"f18", {f18, 2}},
      {"f19", {[](std::span<const double> x) { return hartman(x, constant_tables().hartman3); }, 3}},
      {"f20", {[](std::span<const double> x) { return hartman(x, constant_tables().hartman6); }, 6}},
      {"f21", {[](std::span<const double> x) { return shekel(x, 5); }, 4}},
      {"f22", {[](std::span<const double> x) { return shekel(x, 7); }, 4}},
      {"f23", {[](std::span<const double> x) { return shekel(x, 10); }, 4}},
  };
  return table;
}

const std::unordered_map<std::string_view, Plain>& vpso_table() {
  static const std::unordered_map<std::string_view, Plain> table = {
      {"ackley", ackley},
      {"cosine_mixture", cosine_mixture},
      {"exponential", exponential},
      {"griewank", [](std::span<const double> x) { return griewank_shifted(x, 0.0); }},
      {"rastrigin", rastrigin},
      {"schwefel", schwefel_vpso},
  };
  return table;
}

BenchmarkSpec nd_entry(std::string id, std::string title, Suite suite, std::size_t nd, double lo,
                       double hi, double x0, double fmax) {
  BenchmarkSpec s;
  s.id = std::move(id);
  s.title = std::move(title);
  s.suite = suite;
  s.nd_default = nd;
  s.lo = {lo};
  s.hi = {hi};
  s.xstar = {x0};
  s.fmax_base = fmax;
  return s;
}

BenchmarkSpec fixed_entry(std::string id, std::string title, std::vector<double> lo,
                          std::vector<double> hi, std::vector<double> xstar, double fmax,
                          std::optional<double> exact = std::nullopt) {
  BenchmarkSpec s;
  s.id = std::move(id);
  s.title = std::move(title);
  s.suite = Suite::gso;
  s.nd_default = xstar.size();
  s.nd_fixed = true;
  s.lo = std::move(lo);
  s.hi = std::move(hi);
  s.xstar = std::move(xstar);
  s.fmax_base = fmax;
  s.exact_max_base = exact;
  return s;
}

std::vector<BenchmarkSpec> build_registry() {
  std::vector<BenchmarkSpec> r;
  // Per-axis maximum of x sin(sqrt|x|) on [-500, 500] and its location.
  constexpr double kSchwefelPeak = 418.98288727243374;
  constexpr double kSchwefelArg = 420.96874588787347;

  r.push_back(nd_entry("vpso/ackley", "Ackley", Suite::vpso, 30, -30, 30, 0, 0));
  {
    auto s = nd_entry("vpso/cosine_mixture", "Cosine Mixture", Suite::vpso, 30, -1, 1, 0, 0);
    s.fmax_per_dim = 0.1;
    r.push_back(std::move(s));
  }
  r.push_back(nd_entry("vpso/exponential", "Exponential", Suite::vpso, 30, -1, 1, 0, 1));
  r.push_back(nd_entry("vpso/griewank", "Griewank", Suite::vpso, 30, -600, 600, 0, 0));
  r.push_back(nd_entry("vpso/rastrigin", "Rastrigin", Suite::vpso, 30, -5.12, 5.12, 0, 0));
  {
    auto s = nd_entry("vpso/schwefel", "Schwefel", Suite::vpso, 30, -500, 500, kSchwefelArg, 0);
    // The printed 418.9829 N_d offset is a rounding of the per-axis peak.
    s.exact_max_base = 0.0;
    s.exact_max_per_dim = kSchwefelPeak - 418.9829;
    r.push_back(std::move(s));
  }

  r.push_back(nd_entry("gso/f1", "Sphere", Suite::gso, 30, -100, 100, 0, 0));
  r.push_back(nd_entry("gso/f2", "Schwefel 2.22", Suite::gso, 30, -10, 10, 0, 0));
  r.push_back(nd_entry("gso/f3", "Schwefel 1.2", Suite::gso, 30, -100, 100, 0, 0));
  r.push_back(nd_entry("gso/f4", "Schwefel 2.21", Suite::gso, 30, -100, 100, 0, 0));
  r.push_back(nd_entry("gso/f5", "Rosenbrock (squared residual)", Suite::gso, 30, -30, 30, 1, 0));
  r.push_back(nd_entry("gso/f6", "Step", Suite::gso, 30, -100, 100, 0, 0));
  {
    auto s = nd_entry("gso/f7", "Quartic with noise", Suite::gso, 30, -1.28, 1.28, 0, 0);
    s.deterministic = false;
    r.push_back(std::move(s));
  }
  {
    auto s = nd_entry("gso/f8", "Schwefel 2.26", Suite::gso, 30, -500, 500, kSchwefelArg, 0);
    s.fmax_per_dim = 12569.5 / 30.0;
    s.exact_max_base = 0.0;
    s.exact_max_per_dim = kSchwefelPeak;
    r.push_back(std::move(s));
  }
  r.push_back(nd_entry("gso/f9", "Rastrigin (squared terms)", Suite::gso, 30, -5.12, 5.12, 0, 0));
  r.push_back(nd_entry("gso/f10", "Ackley", Suite::gso, 30, -32, 32, 0, 0));
  r.push_back(nd_entry("gso/f11", "Griewank (shifted)", Suite::gso, 30, -600, 600, 100, 0));
  r.push_back(nd_entry("gso/f12", "Penalized 1", Suite::gso, 30, -50, 50, -1, 0));
  r.push_back(nd_entry("gso/f13", "Penalized 2", Suite::gso, 30, -50, 50, 1, 0));

  const double fox = 65.536;
  r.push_back(fixed_entry("gso/f14", "Shekel's Foxholes", {-fox, -fox}, {fox, fox},
                          {-31.97833495762107, -31.978328496668112}, -1.0, -0.99800383779445));
  r.push_back(fixed_entry("gso/f15", "Kowalik", {-5, -5, -5, -5}, {5, 5, 5, 5},
                          {0.1928334532535868, 0.19083624024185586, 0.12311729988283682,
                           0.13576599032085118},
                          -0.0003075, -3.0748598780560535e-4));
  r.push_back(fixed_entry("gso/f16", "Six-Hump Camel-Back", {-5, -5}, {5, 5},
                          {0.08984201492945389, -0.712656402369394}, 1.0316285,
                          1.0316284534898776));
  r.push_back(fixed_entry("gso/f17", "Branin", {-5, 0}, {10, 15},
                          {-3.1415926620528625, 12.275000006002198}, -0.398,
                          -0.39788735772973816));
  r.push_back(fixed_entry("gso/f18", "Goldstein-Price", {-2, -2}, {2, 2}, {0, -1}, -3.0));
  r.push_back(fixed_entry("gso/f19", "Hartman 3", {0, 0, 0}, {1, 1, 1}, {0.11461433654805793, 0.5556488495457383, 0.8525469525477655}, 3.86,
                          3.8627821478207554));
  r.push_back(fixed_entry("gso/f20", "Hartman 6", std::vector<double>(6, 0.0),
                          std::vector<double>(6, 1.0),
                          {0.20170761811199756, 0.14678094536397435, 0.4767448525052048,
                           0.2753423913491703, 0.3116518763959168, 0.6572751638099456},
                          3.32, 3.3219951715842426));
  r.push_back(fixed_entry("gso/f21", "Shekel m=5", {0, 0, 0, 0}, {10, 10, 10, 10},
                          {4.000037152376549, 4.000133278657566, 4.000037151057555,
                           4.000133277090425},
                          10.0, 10.153199679058229));
  r.push_back(fixed_entry("gso/f22", "Shekel m=7", {0, 0, 0, 0}, {10, 10, 10, 10},
                          {4.000572914277084, 4.000689366040889, 3.9994897107938447,
                           3.9996061600067923},
                          10.0, 10.402940566818662));
  r.push_back(fixed_entry("gso/f23", "Shekel m=10", {0, 0, 0, 0}, {10, 10, 10, 10},
                          {4.000746530253313, 4.000592936779709, 3.9996633957714787,
                           3.9995097993299975},
                          10.0, 10.536409816692045));
  return r;
}

std::string_view short_name(std::string_view id) {
  const auto slash = id.find('/');
  return slash == std::string_view::npos ? id : id.substr(slash + 1);
}

}  // namespace

std::string_view to_string(Suite s) noexcept { return s == Suite::vpso ? "vpso" : "gso"; }

DecisionSpace BenchmarkSpec::space(std::size_t nd) const {
  check_nd(nd);
  if (nd_fixed) return DecisionSpace(lo, hi);
  return make_cube(nd, lo.front(), hi.front());
}

double BenchmarkSpec::fmax(std::size_t nd) const {
  if (id == "gso/f8" && nd == 30) return 12569.5;
  return fmax_base + fmax_per_dim * static_cast<double>(nd);
}

double BenchmarkSpec::exact_max(std::size_t nd) const {
  if (!exact_max_base) return fmax(nd);
  return *exact_max_base + exact_max_per_dim * static_cast<double>(nd);
}

std::optional<std::vector<double>> BenchmarkSpec::maximizer(std::size_t nd) const {
  if (xstar.empty()) return std::nullopt;
  if (nd_fixed) return xstar;
  return std::vector<double>(nd, xstar.front());
}

void BenchmarkSpec::check_nd(std::size_t nd) const {
  if (nd == 0) throw ConfigError(id + ": dimension must be positive");
  if (nd_fixed && nd != nd_default) {
    throw ConfigError(id + " is fixed at nd=" + std::to_string(nd_default) + ", got nd=" +
                      std::to_string(nd));
  }
}

const std::vector<BenchmarkSpec>& registry() {
  static const std::vector<BenchmarkSpec> r = build_registry();
  return r;
}

std::vector<const BenchmarkSpec*> suite_entries(Suite s) {
  std::vector<const BenchmarkSpec*> out;
  for (const auto& b : registry()) {
    if (b.suite == s) out.push_back(&b);
  }
  return out;
}

const BenchmarkSpec& lookup(std::string_view id) {
  for (const auto& b : registry()) {
    if (b.id == id) return b;
  }
  if (id.find('/') == std::string_view::npos) {
    for (const auto& b : registry()) {
      if (short_name(b.id) == id) return b;
    }
  }
  throw UnknownBenchmark("unknown benchmark id '" + std::string(id) + "'");
}

double eval_vpso(std::string_view name, std::span<const double> x) {
  const auto& t = vpso_table();
  const auto it = t.find(short_name(name));
  if (it == t.end()) throw UnknownBenchmark("unknown v-PSO function '" + std::string(name) + "'");
  require_some(name, x);
  return it->second(x);
}

double eval_gso(std::string_view name, std::span<const double> x, UniformSource* noise) {
  const auto& t = gso_table();
  const auto it = t.find(short_name(name));
  if (it == t.end()) throw UnknownBenchmark("unknown GSO function '" + std::string(name) + "'");
  const GsoEntry& e = it->second;
  if (e.nd != 0) {
    require_nd(name, x, e.nd);
  } else {
    require_some(name, x);
  }
  if (e.fn == nullptr) {
    if (noise == nullptr) throw ConfigError("f7 requires a noise stream");
    return f7(x, *noise);
  }
  return e.fn(x);
}

double penalty_u(double x, double a, double k, double m) {
  if (x > a) return k * std::pow(x - a, m);
  if (x < -a) return k * std::pow(-x - a, m);
  return 0.0;
}

const ConstantTables& constant_tables() {
  static const ConstantTables t = build_tables();
  return t;
}

Objective make_objective(const BenchmarkSpec& spec, std::size_t nd, std::uint64_t noise_seed) {
  spec.check_nd(nd);
  Objective obj;
  const std::string name(short_name(spec.id));
  if (spec.suite == Suite::vpso) {
    const Plain fn = vpso_table().at(name);
    obj.evaluate = [fn, nd, id = spec.id](std::span<const double> x) {
      require_nd(id, x, nd);
      return fn(x);
    };
    return obj;
  }
  const GsoEntry e = gso_table().at(name);
  if (e.fn != nullptr) {
    obj.evaluate = [fn = e.fn, nd, id = spec.id](std::span<const double> x) {
      require_nd(id, x, nd);
      return fn(x);
    };
    return obj;
  }
  // The noise stream is owned by this objective, so evaluations must stay ordered.
  auto rng = std::make_shared<Rng>(noise_seed);
  obj.serial_only = true;
  obj.evaluate = [rng, nd, id = spec.id](std::span<const double> x) {
    require_nd(id, x, nd);
    return f7(x, *rng);
  };
  return obj;
}

}  // namespace vso
