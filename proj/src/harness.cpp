#include "vso/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace vso {
namespace detail {
extern const std::string_view kReferenceText;
}

namespace {

const std::vector<std::string> kColumns = {"table", "id",           "nd",    "algo", "label",  "best",
                                           "n_eval", "n_eval_accept", "class", "tol",  "spread", "source"};

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(std::string_view s, std::size_t line_no, std::string_view what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("reference line " + std::to_string(line_no) + ": bad " + std::string(what) + " '" +
                      std::string(s) + "'");
  }
  return v;
}

long long parse_count(std::string_view s, std::size_t line_no) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || v < 0) {
    throw ConfigError("reference line " + std::to_string(line_no) + ": bad count '" + std::string(s) + "'");
  }
  return v;
}

ToleranceClass parse_class(std::string_view s, std::size_t line_no) {
  if (s == "macroscopic") return ToleranceClass::macroscopic;
  if (s == "tiny-residual") return ToleranceClass::tiny_residual;
  if (s == "statistical") return ToleranceClass::statistical;
  if (s == "display") return ToleranceClass::display;
  throw ConfigError("reference line " + std::to_string(line_no) + ": unknown class '" + std::string(s) + "'");
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

std::string json_number(double v) { return std::isfinite(v) ? format_full(v) : "null"; }

std::string group_thousands(const std::string& s) {
  if (s.find_first_of("eEn") != std::string::npos) return s;
  const std::size_t sign = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  std::size_t end = s.find('.');
  if (end == std::string::npos) end = s.size();
  if (end - sign <= 3) return s;
  std::string out = s.substr(0, sign);
  for (std::size_t i = sign; i < end; ++i) {
    out += s[i];
    const std::size_t left = end - i - 1;
    if (left > 0 && left % 3 == 0) out += ',';
  }
  return out + s.substr(end);
}

std::string format_display(double v, int sig = 8) {
  if (!std::isfinite(v)) return format_full(v);
  if (v == 0.0) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", sig, v);
  return group_thousands(buf);
}

std::string format_count(long long n) { return group_thousands(std::to_string(n)); }

std::string describe_value(double best, double target, double diff, double limit, std::string_view what) {
  std::ostringstream os;
  os.precision(6);
  os << "best " << best << " vs " << what << ' ' << target << ": |diff| " << diff << (diff <= limit ? " <= " : " > ")
     << limit;
  return os.str();
}

}  // namespace

std::string format_full(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string_view to_string(Algo a) noexcept { return a == Algo::vso ? "vso" : "sahc"; }

Algo parse_algo(std::string_view s) {
  if (s == "vso") return Algo::vso;
  if (s == "sahc") return Algo::sahc;
  throw ConfigError("unknown algorithm '" + std::string(s) + "' (expected vso or sahc)");
}

std::string_view to_string(ToleranceClass c) noexcept {
  switch (c) {
    case ToleranceClass::macroscopic: return "macroscopic";
    case ToleranceClass::tiny_residual: return "tiny-residual";
    case ToleranceClass::statistical: return "statistical";
    case ToleranceClass::display: return "display";
  }
  return "display";
}

std::string_view to_string(VerdictStatus s) noexcept {
  switch (s) {
    case VerdictStatus::pass: return "pass";
    case VerdictStatus::fail: return "fail";
    case VerdictStatus::unreferenced: return "unreferenced";
    case VerdictStatus::skipped: return "skipped";
  }
  return "unreferenced";
}

std::string_view embedded_reference_text() noexcept { return detail::kReferenceText; }

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

ReferenceTable ReferenceTable::parse(std::string_view text) {
  ReferenceTable t;
  bool header_seen = false;
  std::size_t line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    const auto f = split(line, ',');
    if (!header_seen) {
      if (f.size() != kColumns.size() || !std::equal(f.begin(), f.end(), kColumns.begin())) {
        throw ConfigError("reference line " + std::to_string(line_no) + ": unexpected header");
      }
      header_seen = true;
      continue;
    }
    if (f.size() != kColumns.size()) {
      throw ConfigError("reference line " + std::to_string(line_no) + ": expected " +
                        std::to_string(kColumns.size()) + " fields, got " + std::to_string(f.size()));
    }
    ReferenceEntry e;
    e.table = f[0];
    e.id = f[1];
    e.nd = static_cast<std::size_t>(parse_count(f[2], line_no));
    e.algo = f[3];
    if (e.algo != "vso" && e.algo != "sahc" && e.algo != "other") {
      throw ConfigError("reference line " + std::to_string(line_no) + ": unknown algo '" + e.algo + "'");
    }
    e.label = f[4];
    e.best_text = f[5];
    e.best = parse_double(f[5], line_no, "best");
    if (!f[6].empty()) e.n_eval = parse_count(f[6], line_no);
    if (!f[7].empty()) {
      for (auto c : split(f[7], '|')) e.n_eval_accept.push_back(parse_count(c, line_no));
    }
    e.tolerance_class = parse_class(f[8], line_no);
    if (!f[9].empty()) e.tol = parse_double(f[9], line_no, "tol");
    if (!f[10].empty()) e.spread = parse_double(f[10], line_no, "spread");
    e.source = f[11];
    if (e.algo != "other" && t.find(e.id, e.nd, parse_algo(e.algo)) != nullptr) {
      throw ConfigError("reference line " + std::to_string(line_no) + ": duplicate row for " + e.id);
    }
    t.entries_.push_back(std::move(e));
  }
  if (!header_seen) throw ConfigError("reference data has no header");
  return t;
}

ReferenceTable ReferenceTable::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read reference data " + path.string());
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse(text);
}

const ReferenceTable& ReferenceTable::embedded() {
  static const ReferenceTable table = parse(embedded_reference_text());
  return table;
}

const ReferenceEntry* ReferenceTable::find(std::string_view id, std::size_t nd, Algo algo) const {
  for (const auto& e : entries_) {
    if (e.id == id && e.nd == nd && e.algo == to_string(algo)) return &e;
  }
  return nullptr;
}

std::vector<const ReferenceEntry*> ReferenceTable::others(std::string_view id, std::size_t nd) const {
  std::vector<const ReferenceEntry*> out;
  for (const auto& e : entries_) {
    if (e.id == id && e.nd == nd && e.algo == "other") out.push_back(&e);
  }
  return out;
}

Verdict compare_reference(const RunResult& result, const ReferenceEntry* ref, Algo algo, long long np,
                          double exact_max, int sahc_runs) {
  Verdict v;
  if (ref == nullptr) {
    v.detail = "no published row";
    return v;
  }
  const double best = result.best.fstar;
  const double pub = ref->best;
  const double slack = std::max(1e-6, 1e-3 * std::abs(pub));
  bool value_ok = false;
  std::string detail;
  switch (ref->tolerance_class) {
    case ToleranceClass::macroscopic: {
      const double diff = std::abs(best - pub);
      value_ok = diff <= slack;
      detail = describe_value(best, pub, diff, slack, "published");
      break;
    }
    case ToleranceClass::tiny_residual: {
      const double diff = std::abs(best - exact_max);
      value_ok = diff <= ref->tol;
      detail = describe_value(best, exact_max, diff, ref->tol, "optimum");
      break;
    }
    case ToleranceClass::statistical: {
      const double gap = std::abs(exact_max - best);
      const double limit = kSahcGapFactor * std::abs(exact_max - pub) + slack;
      value_ok = gap <= limit;
      detail = describe_value(best, exact_max, gap, limit, "optimum");
      break;
    }
    case ToleranceClass::display:
      v.status = VerdictStatus::unreferenced;
      v.detail = "display-only row";
      return v;
  }

  bool count_ok = true;
  if (ref->n_eval) {
    const long long n = result.n_eval;
    v.count_deviation = n - *ref->n_eval;
    std::ostringstream os;
    os << "; n_eval " << n << " (published " << *ref->n_eval;
    if (algo == Algo::vso) {
      const bool accepted =
          std::find(ref->n_eval_accept.begin(), ref->n_eval_accept.end(), n) != ref->n_eval_accept.end();
      if (n == *ref->n_eval || accepted) {
        if (n != *ref->n_eval) os << ", accepted alternative";
      } else if (std::llabs(*v.count_deviation) == 3 * np) {
        v.count_shifted = true;
        os << ", shifted by " << (*v.count_deviation > 0 ? "+" : "-") << "3 Np";
      } else {
        count_ok = false;
        os << ", mismatch";
      }
    } else {
      const long long floor = 4LL * sahc_runs * np;
      const auto ceiling = static_cast<long long>(kSahcCountBandHigh * static_cast<double>(sahc_runs) * np);
      count_ok = n >= floor && n <= ceiling;
      os << ", band [" << floor << ", " << ceiling << "]" << (count_ok ? "" : " violated");
    }
    os << ")";
    detail += os.str();
  }
  v.status = value_ok && count_ok ? VerdictStatus::pass : VerdictStatus::fail;
  v.detail = std::move(detail);
  return v;
}

bool SuiteOverrides::changes_algorithm() const noexcept {
  return (rho && *rho != VsoConfig{}.rho) || (runs && *runs != SahcConfig{}.num_runs) || reset_per_run;
}

VsoConfig vso_config_for(const SuiteOverrides& o) {
  VsoConfig c;
  if (o.rho) c.rho = *o.rho;
  return c;
}

SahcConfig sahc_config_for(const SuiteOverrides& o) {
  SahcConfig c;
  c.seed = o.seed;
  if (o.runs) c.num_runs = *o.runs;
  c.global_best_across_runs = !o.reset_per_run;
  return c;
}

namespace {

SuiteRow run_core(const Objective& objective, const DecisionSpace& ds, Algo algo, const SuiteOverrides& o,
                  SuiteRow row, const ReferenceTable& ref) {
  row.nd = ds.nd();
  row.algo = algo;
  const VsoConfig vcfg = vso_config_for(o);
  const SahcConfig scfg = sahc_config_for(o);
  row.np = algo == Algo::vso
               ? static_cast<long long>(vcfg.points_per_dim) * vcfg.num_gammas * static_cast<long long>(ds.nd())
               : static_cast<long long>(scfg.points_per_dim) * static_cast<long long>(ds.nd());
  if (const ReferenceEntry* r = ref.find(row.id, row.nd, algo)) row.reference = *r;

  try {
    row.result = algo == Algo::vso ? run_vso(objective, ds, vcfg) : run_sahc(objective, ds, scfg);
  } catch (const std::exception& e) {
    row.error = e.what();
    row.verdict.status = VerdictStatus::fail;
    row.verdict.detail = std::string("run error: ") + e.what();
    return row;
  }
  if (o.changes_algorithm()) {
    row.verdict.status = VerdictStatus::skipped;
    row.verdict.detail = "algorithm parameters overridden; no published counterpart";
    return row;
  }
  row.verdict = compare_reference(*row.result, row.reference ? &*row.reference : nullptr, algo, row.np,
                                  row.exact_max, scfg.num_runs);
  return row;
}

}  // namespace

SuiteRow run_entry(const BenchmarkSpec& spec, Algo algo, const SuiteOverrides& o, const ReferenceTable& ref) {
  SuiteRow row;
  row.id = spec.id;
  row.title = spec.title;
  row.algo = algo;
  row.nd = o.nd.value_or(spec.nd_default);
  try {
    spec.check_nd(row.nd);
    row.fmax = spec.fmax(row.nd);
    row.exact_max = spec.exact_max(row.nd);
    const Objective obj = make_objective(spec, row.nd, o.seed);
    return run_core(obj, spec.space(row.nd), algo, o, std::move(row), ref);
  } catch (const std::exception& e) {
    row.error = e.what();
    row.verdict.status = VerdictStatus::fail;
    row.verdict.detail = std::string("setup error: ") + e.what();
    return row;
  }
}

SuiteRow run_custom(const Objective& objective, const DecisionSpace& ds, Algo algo, const SuiteOverrides& o,
                    std::string id, const ReferenceTable& ref) {
  SuiteRow row;
  row.id = std::move(id);
  row.title = "external";
  row.fmax = std::numeric_limits<double>::quiet_NaN();
  row.exact_max = row.fmax;
  try {
    const BenchmarkSpec& spec = lookup(row.id);
    row.id = spec.id;
    row.title = spec.title + " (external)";
    row.fmax = spec.fmax(ds.nd());
    row.exact_max = spec.exact_max(ds.nd());
  } catch (const UnknownBenchmark&) {
  }
  return run_core(objective, ds, algo, o, std::move(row), ref);
}

std::size_t SuiteReport::count(VerdictStatus s) const noexcept {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [s](const SuiteRow& r) { return r.verdict.status == s; }));
}

void enforce_shift_limit(SuiteReport& report) {
  const auto shifted = std::count_if(report.rows.begin(), report.rows.end(),
                                     [](const SuiteRow& r) { return r.verdict.count_shifted; });
  if (shifted <= kMaxShiftedRows) return;
  for (auto& r : report.rows) {
    if (r.verdict.count_shifted && r.verdict.status == VerdictStatus::pass) {
      r.verdict.status = VerdictStatus::fail;
      r.verdict.detail += "; too many shifted counts in suite (" + std::to_string(shifted) + ")";
    }
  }
}

SuiteReport run_suite(std::string_view suite, Algo algo, const SuiteOverrides& o, const ReferenceTable& ref,
                      const ProgressFn& progress) {
  std::vector<const BenchmarkSpec*> entries;
  if (suite == "vpso" || suite == "all") {
    auto v = suite_entries(Suite::vpso);
    entries.insert(entries.end(), v.begin(), v.end());
  }
  if (suite == "gso" || suite == "all") {
    auto g = suite_entries(Suite::gso);
    entries.insert(entries.end(), g.begin(), g.end());
  }
  if (entries.empty()) throw UnknownBenchmark("unknown suite '" + std::string(suite) + "' (expected vpso, gso or all)");

  SuiteReport report;
  report.suite = suite;
  report.algo = algo;
  report.seed = o.seed;
  report.vso_config = vso_config_for(o);
  report.sahc_config = sahc_config_for(o);
  for (const BenchmarkSpec* spec : entries) {
    SuiteOverrides eo = o;
    if (spec->nd_fixed) eo.nd.reset();
    report.rows.push_back(run_entry(*spec, algo, eo, ref));
    if (progress) progress(report.rows.back());
  }
  enforce_shift_limit(report);
  return report;
}

ReportFormat parse_format(std::string_view s) {
  if (s == "csv") return ReportFormat::csv;
  if (s == "markdown" || s == "md") return ReportFormat::markdown;
  if (s == "jsonl") return ReportFormat::jsonl;
  throw ConfigError("unknown report format '" + std::string(s) + "' (expected csv, markdown or jsonl)");
}

void emit_report(const SuiteReport& report, ReportFormat fmt, std::ostream& out) {
  auto opt_count = [](const std::optional<long long>& n) { return n ? std::to_string(*n) : std::string(); };

  if (fmt == ReportFormat::csv) {
    out << "id,nd,algo,np,fmax,exact_max,best,n_eval,last_iteration,runs,published_best,published_n_eval,"
           "class,verdict,count_deviation,detail,wall_time\n";
    for (const auto& r : report.rows) {
      const RunResult* res = r.result ? &*r.result : nullptr;
      out << r.id << ',' << r.nd << ',' << to_string(r.algo) << ',' << r.np << ',' << format_full(r.fmax) << ','
          << format_full(r.exact_max) << ',' << (res ? format_full(res->best.fstar) : "") << ','
          << (res ? std::to_string(res->n_eval) : "") << ',' << (res ? std::to_string(res->last_iteration) : "")
          << ',' << (res ? std::to_string(res->runs) : "") << ','
          << (r.reference ? format_full(r.reference->best) : "") << ','
          << (r.reference ? opt_count(r.reference->n_eval) : "") << ','
          << (r.reference ? to_string(r.reference->tolerance_class) : "") << ',' << to_string(r.verdict.status)
          << ',' << opt_count(r.verdict.count_deviation) << ',' << csv_field(r.verdict.detail) << ','
          << (res ? format_full(res->wall_time) : "") << '\n';
    }
  } else if (fmt == ReportFormat::jsonl) {
    for (const auto& r : report.rows) {
      const RunResult* res = r.result ? &*r.result : nullptr;
      std::string rstar = "null";
      if (res) {
        rstar = "[";
        for (std::size_t i = 0; i < res->best.rstar.size(); ++i) {
          if (i) rstar += ',';
          rstar += json_number(res->best.rstar[i]);
        }
        rstar += "]";
      }
      out << "{\"id\":" << json_string(r.id) << ",\"title\":" << json_string(r.title) << ",\"nd\":" << r.nd
          << ",\"algo\":\"" << to_string(r.algo) << "\",\"np\":" << r.np << ",\"fmax\":" << json_number(r.fmax)
          << ",\"exact_max\":" << json_number(r.exact_max)
          << ",\"best\":" << (res ? json_number(res->best.fstar) : "null") << ",\"rstar\":" << rstar
          << ",\"n_eval\":" << (res ? std::to_string(res->n_eval) : "null")
          << ",\"last_iteration\":" << (res ? std::to_string(res->last_iteration) : "null")
          << ",\"runs\":" << (res ? std::to_string(res->runs) : "null")
          << ",\"published_best\":" << (r.reference ? json_number(r.reference->best) : "null")
          << ",\"published_n_eval\":"
          << (r.reference && r.reference->n_eval ? std::to_string(*r.reference->n_eval) : "null")
          << ",\"class\":" << (r.reference ? json_string(std::string(to_string(r.reference->tolerance_class))) : "null")
          << ",\"verdict\":\"" << to_string(r.verdict.status) << "\",\"count_deviation\":"
          << (r.verdict.count_deviation ? std::to_string(*r.verdict.count_deviation) : "null")
          << ",\"count_shifted\":" << (r.verdict.count_shifted ? "true" : "false")
          << ",\"detail\":" << json_string(r.verdict.detail) << ",\"error\":" << json_string(r.error)
          << ",\"seed\":" << report.seed << ",\"wall_time\":" << (res ? json_number(res->wall_time) : "null")
          << "}\n";
    }
  } else {
    const ReferenceTable& table = ReferenceTable::embedded();
    out << "| f | N_d | f_max | " << (report.algo == Algo::vso ? "VSO" : "SAHC")
        << " best | N_eval | published best | published N_eval | other published | verdict |\n";
    out << "|---|---:|---:|---:|---:|---:|---:|---|---|\n";
    for (const auto& r : report.rows) {
      const RunResult* res = r.result ? &*r.result : nullptr;
      std::string others;
      for (const ReferenceEntry* e : table.others(r.id, r.nd)) {
        if (!others.empty()) others += "; ";
        others += e->label + " " + group_thousands(e->best_text);
        if (e->spread) others += " ± " + format_display(*e->spread, 4);
        if (e->n_eval) others += " (" + format_count(*e->n_eval) + ")";
      }
      out << "| " << r.id << " | " << r.nd << " | " << format_display(r.fmax) << " | "
          << (res ? format_display(res->best.fstar, 10) : "error") << " | " << (res ? format_count(res->n_eval) : "")
          << " | " << (r.reference ? group_thousands(r.reference->best_text) : "") << " | "
          << (r.reference && r.reference->n_eval ? format_count(*r.reference->n_eval) : "") << " | " << others
          << " | " << to_string(r.verdict.status) << " |\n";
    }
  }
  if (!out) throw std::runtime_error("report write failed");
}

void emit_report(const SuiteReport& report, ReportFormat fmt, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  emit_report(report, fmt, out);
  out.flush();
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

void emit_trace(const RunResult& result, std::ostream& out) {
  if (result.trace.empty()) throw ConfigError("trace is empty");
  for (const auto& t : result.trace) out << t.iteration << ' ' << format_full(t.best) << '\n';
  if (!out) throw std::runtime_error("trace write failed");
}

void emit_trace(const RunResult& result, const std::filesystem::path& path) {
  if (result.trace.empty()) throw ConfigError("trace is empty");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  emit_trace(result, out);
  out.flush();
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

}  // namespace vso
