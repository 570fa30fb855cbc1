// SPDX-FileCopyrightText: (c) 2026 regmin developers
//
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Talks to the library only through regmin.h.
//
// Exit codes: 0 success, 1 usage error, 2 solver error, 3 certification failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "regmin/regmin.h"

namespace {

constexpr int kUsage = 1;
constexpr int kSolver = 2;
constexpr int kCertify = 3;

struct Failure {
  int code;
  std::string message;
};

int exit_code_for(regmin_status st) {
  switch (st) {
    case REGMIN_OK:
      return 0;
    case REGMIN_E_INVALID:
    case REGMIN_E_PRECONDITION:
    case REGMIN_E_IO:
      return kUsage;
    case REGMIN_E_CERTIFY:
      return kCertify;
    default:
      return kSolver;
  }
}

void check(regmin_status st) {
  if (st != REGMIN_OK) throw Failure{exit_code_for(st), regmin_last_error()};
}

using SpecPtr = std::unique_ptr<regmin_runspec, decltype(&regmin_runspec_destroy)>;
using TracePtr = std::unique_ptr<regmin_trace, decltype(&regmin_trace_destroy)>;

std::string take(char* s) {
  std::string out = s ? s : "";
  regmin_free_string(s);
  return out;
}

std::string output_dir() {
  const char* env = std::getenv("REGMIN_OUTPUT_DIR");
  return env && *env ? env : ".";
}

std::string resolve(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) p = std::filesystem::path(output_dir()) / p;
  return p.string();
}

std::string stem_of(const std::string& csv) {
  if (csv.size() > 4 && csv.compare(csv.size() - 4, 4, ".csv") == 0) return csv.substr(0, csv.size() - 4);
  return csv;
}

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw Failure{kUsage, "cannot parse coordinate '" + cell + "' in --y"};
    }
  }
  if (out.empty()) throw Failure{kUsage, "--y needs at least one coordinate"};
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text << '\n';
  if (!out) throw Failure{kSolver, "cannot write '" + path + "'"};
}

TracePtr load_trace(const std::string& path) {
  regmin_trace* t = nullptr;
  check(regmin_trace_load(path.c_str(), &t));
  return TracePtr(t, &regmin_trace_destroy);
}

// --- run ---------------------------------------------------------------

struct RunArgs {
  std::string config;
  std::map<std::string, std::string> flags;  // canonical key -> value
  std::vector<std::string> sets;             // --set key=value
};

int cmd_run(const RunArgs& args) {
  regmin_runspec* raw = nullptr;
  check(regmin_runspec_create(&raw));
  SpecPtr spec(raw, &regmin_runspec_destroy);
  if (!args.config.empty()) check(regmin_runspec_load(spec.get(), args.config.c_str()));
  for (const auto& kv : args.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw Failure{kUsage, "--set expects key=value, got '" + kv + "'"};
    check(regmin_runspec_set(spec.get(), kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()));
  }
  for (const auto& [k, v] : args.flags) check(regmin_runspec_set(spec.get(), k.c_str(), v.c_str()));

  char* out_raw = nullptr;
  check(regmin_runspec_get(spec.get(), "out", &out_raw));
  std::string out = take(out_raw);
  if (out.empty()) {
    char* p = nullptr;
    char* a = nullptr;
    check(regmin_runspec_get(spec.get(), "problem", &p));
    check(regmin_runspec_get(spec.get(), "algorithm", &a));
    out = take(p) + "_" + take(a) + ".csv";
  }
  out = resolve(out);

  regmin_trace* t = nullptr;
  check(regmin_run(spec.get(), &t));
  TracePtr trace(t, &regmin_trace_destroy);
  check(regmin_trace_save(trace.get(), out.c_str()));
  char* summary = nullptr;
  check(regmin_trace_summary(trace.get(), &summary));
  std::cout << take(summary) << "\ntrace: " << out << '\n';
  return 0;
}

// --- certify / rate ----------------------------------------------------

struct CertifyArgs {
  std::string trace;
  std::string y;
  double tol = -1.0;
  std::string out;
};

int cmd_certify(const CertifyArgs& args) {
  TracePtr trace = load_trace(args.trace);
  const std::vector<double> y = args.y.empty() ? std::vector<double>{} : parse_point(args.y);
  const std::string stem = stem_of(args.out.empty() ? args.trace : resolve(args.out));
  const std::string csv = args.out.empty() ? stem + ".cert.csv" : resolve(args.out);
  const std::string json_path = stem_of(csv) + ".json";
  char* json = nullptr;
  int passed = 0;
  check(regmin_certify(trace.get(), y.empty() ? nullptr : y.data(), y.size(), args.tol, csv.c_str(), &json,
                       &passed));
  const std::string text = take(json);
  write_file(json_path, text);
  std::cout << text << "\ncertificates: " << csv << "\nsummary: " << json_path << '\n';
  if (!passed) {
    std::cerr << "error: certification failed (negative slack beyond tolerance)\n";
    return kCertify;
  }
  return 0;
}

int cmd_rate(const CertifyArgs& args) {
  TracePtr trace = load_trace(args.trace);
  const std::vector<double> y = args.y.empty() ? std::vector<double>{} : parse_point(args.y);
  char* json = nullptr;
  int passed = 0;
  check(regmin_rate(trace.get(), y.empty() ? nullptr : y.data(), y.size(), &json, &passed));
  const std::string text = take(json);
  const std::string path = args.out.empty() ? stem_of(args.trace) + ".rate.json" : resolve(args.out);
  write_file(path, text);
  std::cout << text << "\nreport: " << path << '\n';
  if (!passed) {
    std::cerr << "error: rate bound violated\n";
    return kCertify;
  }
  return 0;
}

// --- suite -------------------------------------------------------------

struct SuiteArgs {
  std::string matrix;
  std::string report;
  unsigned threads = 0;
};

int cmd_suite(const SuiteArgs& args) {
  char* json = nullptr;
  int code = 0;
  const std::string dir = output_dir();
  check(regmin_suite(args.matrix.c_str(), dir.c_str(), args.threads, &json, &code));
  const std::string path = resolve(args.report.empty() ? "suite_report.json" : args.report);
  const std::string text = take(json);
  write_file(path, text);
  std::cout << text << "\nreport: " << path << '\n';
  return code;
}

// --- problems ----------------------------------------------------------

int cmd_problems_list(bool as_json) {
  const std::size_t n = regmin_problem_count();
  if (as_json) std::cout << "[\n";
  for (std::size_t i = 0; i < n; ++i) {
    const char* name = regmin_problem_name(i);
    if (as_json) {
      char* json = nullptr;
      check(regmin_problem_describe(name, &json));
      std::cout << "  " << take(json) << (i + 1 < n ? ",\n" : "\n");
    } else {
      std::cout << name << '\n';
    }
  }
  if (as_json) std::cout << "]\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regularized methods for unconstrained minimization"};
  app.set_version_flag("--version", std::string(regmin_version()));
  app.require_subcommand(1);

  // run: one flag per RunSpec key, named with dashes.
  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run a solver and write its trace");
  run->add_option("--config", run_args.config, "key=value file applied before flags")->check(CLI::ExistingFile);
  run->add_option("--set", run_args.sets, "Extra key=value pairs (repeatable)");
  std::map<std::string, std::string> raw_flags;
  std::vector<std::pair<std::string, CLI::Option*>> key_opts;
  for (std::size_t i = 0; i < regmin_runspec_key_count(); ++i) {
    std::string key = regmin_runspec_key(i);
    std::string flag = key;
    for (char& ch : flag)
      if (ch == '_') ch = '-';
    key_opts.emplace_back(key, run->add_option("--" + flag, raw_flags[key], "RunSpec key " + key));
  }

  CertifyArgs cert_args;
  auto* certify = app.add_subcommand("certify", "Quasi-Fejer certificates for a trace");
  certify->add_option("trace", cert_args.trace, "Trace CSV")->required();
  certify->add_option("--y", cert_args.y, "Reference point (comma separated); default: catalog minimizer");
  certify->add_option("--tol", cert_args.tol, "Base certificate tolerance (default 1e-8, 1e-6 derived y)");
  certify->add_option("--out", cert_args.out, "Certificate CSV (default <trace stem>.cert.csv)");

  CertifyArgs rate_args;
  auto* rate = app.add_subcommand("rate", "Check the sublinear rate bound on a trace");
  rate->add_option("trace", rate_args.trace, "Trace CSV")->required();
  rate->add_option("--y", rate_args.y, "Reference point (comma separated)");
  rate->add_option("--out", rate_args.out, "Report JSON (default <trace stem>.rate.json)");

  SuiteArgs suite_args;
  auto* suite = app.add_subcommand("suite", "Run a matrix of specs and aggregate the acceptance checks");
  suite->add_option("matrix", suite_args.matrix, "Matrix file, one spec per line")
      ->required()
      ->check(CLI::ExistingFile);
  suite->add_option("--report", suite_args.report, "Aggregate JSON (default suite_report.json)");
  suite->add_option("--threads", suite_args.threads, "Worker threads (0: all cores)");

  auto* problems = app.add_subcommand("problems", "Problem catalog");
  problems->require_subcommand(1);
  bool list_json = false;
  auto* list = problems->add_subcommand("list", "List catalog problems");
  list->add_flag("--json", list_json, "Describe each problem as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (run->parsed()) {
      for (const auto& [key, opt] : key_opts)
        if (opt->count() > 0) run_args.flags[key] = raw_flags[key];
      return cmd_run(run_args);
    }
    if (certify->parsed()) return cmd_certify(cert_args);
    if (rate->parsed()) return cmd_rate(rate_args);
    if (suite->parsed()) return cmd_suite(suite_args);
    if (list->parsed()) return cmd_problems_list(list_json);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  }
  return kUsage;
}
