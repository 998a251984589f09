// vso-bench: runs VSO or SAHC over the benchmark suites or an external program.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vso/benchmarks.hpp"
#include "vso/external.hpp"
#include "vso/harness.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerdictFailure = 1;
constexpr int kExitConfigError = 2;

struct RunOptions {
  std::string algo = "vso";
  std::string suite = "gso";
  std::string fn;
  std::optional<std::size_t> nd;
  std::optional<std::uint64_t> seed;
  std::optional<double> rho;
  std::optional<int> runs;
  bool reset_per_run = false;
  std::string emit = "csv";
  std::string out;
  std::string trace;
  std::string reference;
  bool quiet = false;

  std::string external_cmd;
  std::string external_in = "vso_input.txt";
  std::string external_out = "vso_output.txt";
  double external_timeout = 60.0;
  std::string snapshot_best;
  std::string bounds;
};

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> words;
  for (std::string w; in >> w;) words.push_back(w);
  return words;
}

// "LO:HI" repeated nd times, or "LO1:HI1,LO2:HI2,...".
vso::DecisionSpace parse_bounds(const std::string& text, std::optional<std::size_t> nd) {
  std::vector<double> lo, hi;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw vso::ConfigError("bounds item '" + item + "' is not LO:HI");
    try {
      lo.push_back(std::stod(item.substr(0, colon)));
      hi.push_back(std::stod(item.substr(colon + 1)));
    } catch (const std::logic_error&) {
      throw vso::ConfigError("bounds item '" + item + "' is not numeric");
    }
  }
  if (lo.size() == 1 && nd && *nd > 1) {
    lo.assign(*nd, lo.front());
    hi.assign(*nd, hi.front());
  }
  if (nd && lo.size() != *nd) throw vso::ConfigError("--bounds has " + std::to_string(lo.size()) + " axes, --nd is " + std::to_string(*nd));
  return vso::make_decision_space(lo, hi);
}

std::string trace_file_name(const std::string& id) {
  std::string s = id;
  for (char& c : s) {
    if (c == '/') c = '_';
  }
  return s + ".txt";
}

void print_progress(const vso::SuiteRow& row) {
  std::ostringstream os;
  os << row.id << " nd=" << row.nd << ' ' << vso::to_string(row.algo);
  if (row.result) {
    os << " best=" << vso::format_full(row.result->best.fstar) << " n_eval=" << row.result->n_eval;
  }
  os << " [" << vso::to_string(row.verdict.status) << "] " << row.verdict.detail << '\n';
  std::cerr << os.str();
}

int run_command(const RunOptions& opt) {
  const vso::Algo algo = vso::parse_algo(opt.algo);
  const vso::ReportFormat fmt = vso::parse_format(opt.emit);
  const vso::ReferenceTable loaded =
      opt.reference.empty() ? vso::ReferenceTable{} : vso::ReferenceTable::load(opt.reference);
  const vso::ReferenceTable& ref = opt.reference.empty() ? vso::ReferenceTable::embedded() : loaded;

  vso::SuiteOverrides o;
  o.nd = opt.nd;
  if (opt.seed) o.seed = *opt.seed;
  o.rho = opt.rho;
  o.runs = opt.runs;
  o.reset_per_run = opt.reset_per_run;
  if (opt.reset_per_run && algo != vso::Algo::sahc) throw vso::ConfigError("--reset-per-run applies to --algo sahc only");
  if (opt.runs && algo != vso::Algo::sahc) throw vso::ConfigError("--runs applies to --algo sahc only");
  if (opt.rho && algo != vso::Algo::vso) throw vso::ConfigError("--rho applies to --algo vso only");
  vso::vso_config_for(o).validate();
  vso::sahc_config_for(o).validate();

  vso::SuiteReport report;
  report.algo = algo;
  report.seed = o.seed;
  report.vso_config = vso::vso_config_for(o);
  report.sahc_config = vso::sahc_config_for(o);

  if (!opt.external_cmd.empty()) {
    vso::SubprocessObjectiveSpec spec;
    spec.command = split_words(opt.external_cmd);
    spec.input_path = opt.external_in;
    spec.output_path = opt.external_out;
    spec.timeout = opt.external_timeout;
    if (!opt.snapshot_best.empty()) spec.best_artifact_path = fs::path(opt.snapshot_best);
    const vso::Objective objective = vso::subprocess_objective(spec);

    std::optional<vso::DecisionSpace> ds;
    std::string id = "external";
    if (!opt.bounds.empty()) {
      ds = parse_bounds(opt.bounds, opt.nd);
    } else if (!opt.fn.empty()) {
      const vso::BenchmarkSpec& b = vso::lookup(opt.fn);
      const std::size_t nd = opt.nd.value_or(b.nd_default);
      b.check_nd(nd);
      ds = b.space(nd);
    } else {
      throw vso::ConfigError("--external-cmd needs --bounds or --fn to define the search box");
    }
    if (!opt.fn.empty()) id = opt.fn;
    report.suite = "external";
    report.rows.push_back(vso::run_custom(objective, *ds, algo, o, id, ref));
    if (!opt.quiet) print_progress(report.rows.back());
  } else if (!opt.fn.empty()) {
    const vso::BenchmarkSpec& b = vso::lookup(opt.fn);
    b.check_nd(opt.nd.value_or(b.nd_default));
    report.suite = b.id;
    report.rows.push_back(vso::run_entry(b, algo, o, ref));
    if (!opt.quiet) print_progress(report.rows.back());
  } else {
    vso::ProgressFn progress;
    if (!opt.quiet) progress = print_progress;
    report = vso::run_suite(opt.suite, algo, o, ref, progress);
  }
  vso::enforce_shift_limit(report);

  if (opt.out.empty() || opt.out == "-") {
    vso::emit_report(report, fmt, std::cout);
    std::cout.flush();
  } else {
    vso::emit_report(report, fmt, fs::path(opt.out));
  }

  if (!opt.trace.empty()) {
    if (report.rows.size() == 1) {
      if (report.rows.front().result) vso::emit_trace(*report.rows.front().result, fs::path(opt.trace));
    } else {
      fs::create_directories(opt.trace);
      for (const auto& row : report.rows) {
        if (row.result) vso::emit_trace(*row.result, fs::path(opt.trace) / trace_file_name(row.id));
      }
    }
  }

  if (!opt.quiet) {
    std::cerr << report.count(vso::VerdictStatus::pass) << " pass, " << report.count(vso::VerdictStatus::fail)
              << " fail, " << report.count(vso::VerdictStatus::skipped) << " skipped, "
              << report.count(vso::VerdictStatus::unreferenced) << " unreferenced\n";
  }
  return report.any_failure() ? kExitVerdictFailure : kExitPass;
}

void list_command(const std::string& suite) {
  std::printf("%-22s %-30s %4s %-24s %s\n", "id", "title", "nd", "box", "f_max");
  for (const auto& b : vso::registry()) {
    if (!suite.empty() && vso::to_string(b.suite) != suite) continue;
    std::string box;
    const bool uniform = std::equal(b.lo.begin() + 1, b.lo.end(), b.lo.begin()) &&
                         std::equal(b.hi.begin() + 1, b.hi.end(), b.hi.begin());
    char buf[96];
    if (uniform) {
      std::snprintf(buf, sizeof buf, "[%g, %g]^%zu", b.lo.front(), b.hi.front(), b.nd_default);
    } else {
      std::snprintf(buf, sizeof buf, "mixed per axis");
    }
    box = buf;
    std::printf("%-22s %-30s %4zu %-24s %.10g%s\n", b.id.c_str(), b.title.c_str(), b.nd_default, box.c_str(),
                b.fmax(), b.nd_fixed ? "" : " (at default nd)");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vso-bench: VSO and SAHC benchmark harness"};
  app.require_subcommand(1);

  RunOptions opt;
  CLI::App* run = app.add_subcommand("run", "Run an algorithm on a suite, one benchmark, or an external program");
  run->add_option("--algo", opt.algo, "vso or sahc")->check(CLI::IsMember({"vso", "sahc"}))->capture_default_str();
  run->add_option("--suite", opt.suite, "vpso, gso or all")->check(CLI::IsMember({"vpso", "gso", "all"}))->capture_default_str();
  run->add_option("--fn", opt.fn, "Single benchmark id, e.g. gso/f8 or vpso/schwefel");
  run->add_option("--nd", opt.nd, "Dimension for n-dimensional benchmarks");
  run->add_option("--seed", opt.seed, "Root seed for SAHC and for the noisy benchmark (default 20130702)");
  run->add_option("--rho", opt.rho, "VSO repositioning fraction in [0, 1]");
  run->add_option("--runs", opt.runs, "Number of SAHC runs");
  run->add_flag("--reset-per-run", opt.reset_per_run, "SAHC: fresh best record and registers per run");
  run->add_option("--emit", opt.emit, "Report format: csv, markdown or jsonl")
      ->check(CLI::IsMember({"csv", "markdown", "md", "jsonl"}))
      ->capture_default_str();
  run->add_option("--out", opt.out, "Report destination (default stdout)");
  run->add_option("--trace", opt.trace, "Trace file, or directory for suite runs");
  run->add_option("--reference", opt.reference, "Reference table CSV overriding the built-in one");
  run->add_flag("--quiet,-q", opt.quiet, "No per-row progress on stderr");
  run->add_option("--external-cmd", opt.external_cmd, "External evaluator command line (split on whitespace)");
  run->add_option("--external-in", opt.external_in, "File the candidate is written to")->capture_default_str();
  run->add_option("--external-out", opt.external_out, "File the fitness is read from")->capture_default_str();
  run->add_option("--external-timeout", opt.external_timeout, "Seconds per external call")->capture_default_str();
  run->add_option("--snapshot-best", opt.snapshot_best, "Copy of the input file for the best point so far");
  run->add_option("--bounds", opt.bounds, "Search box for external runs: LO:HI or LO1:HI1,LO2:HI2,...");

  std::string list_suite;
  CLI::App* list = app.add_subcommand("list", "List the registered benchmarks");
  list->add_option("--suite", list_suite, "vpso or gso")->check(CLI::IsMember({"vpso", "gso"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfigError;
  }

  try {
    if (*list) {
      list_command(list_suite);
      return kExitPass;
    }
    return run_command(opt);
  } catch (const vso::ConfigError& e) {
    std::cerr << "vso-bench: configuration error: " << e.what() << '\n';
  } catch (const vso::UnknownBenchmark& e) {
    std::cerr << "vso-bench: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "vso-bench: " << e.what() << '\n';
  }
  return kExitConfigError;
}
