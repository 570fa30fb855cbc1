// SPDX-FileCopyrightText: (c) 2026 regmin developers
//
// SPDX-License-Identifier: Apache-2.0

#ifndef REGMIN_SUITE_HPP
#define REGMIN_SUITE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "regmin/fejer_monitor.hpp"
#include "regmin/run_spec.hpp"

namespace regmin {

/// Numbering follows the acceptance list in the README.
inline constexpr int kCriterionCount = 11;

struct CriterionOutcome {
  bool pass = true;
  std::string detail;
};

/// Per-run property checks. Only criteria that apply to the run are present.
struct RunEvaluation {
  std::map<int, CriterionOutcome> criteria;
  std::optional<CertifyResult> cert;
  std::string cert_error;  // certification refused (y outside F)

  bool pass() const;
};

/// Criteria 2-10 on one finished run:
///   2 inexactness, 3 model/f decrease, 4 monotone f, 5 summability,
///   6 certificates, 7 radius + convergence of the iterates,
///   8 pseudoconvex convergence (alg2), 9 rate (alg2, convex, known f*),
///   10 gradient-method embedding.
RunEvaluation evaluate_run(const PreparedRun& run, const Trace& trace);

/// Worst check_gradient value per catalog problem over `points` seeded probes
/// in [-probe_radius, probe_radius]^n (h = 1e-5).
std::map<std::string, double> gradient_check_catalog(std::uint64_t seed, int points);

struct SuiteRow {
  int line = 0;
  std::string text;
  std::string label;
  bool ok = false;  // parsed, ran and (if applicable) certified without error
  std::string error;
  std::optional<Trace> trace;
  RunEvaluation eval;
};

struct SuiteCriterion {
  std::string status = "skipped";  // pass | fail | skipped
  int applicable = 0;
  std::vector<int> failed_lines;
  std::string detail;
};

struct SuiteReport {
  std::vector<SuiteRow> rows;
  std::map<int, SuiteCriterion> criteria;
  int errors = 0;

  bool passed() const;
  /// 0 all good, 2 a row errored, 3 a criterion failed.
  int exit_code() const;
  nlohmann::json to_json() const;
};

struct SuiteOptions {
  std::string out_dir = ".";  // base for relative `out=` paths
  unsigned threads = 0;       // 0: hardware concurrency
};

/// One spec per line as whitespace-separated key=value tokens; '#' starts a comment.
SuiteReport run_suite(const std::string& matrix_text, const SuiteOptions& opts = {});

}  // namespace regmin

#endif  // REGMIN_SUITE_HPP
