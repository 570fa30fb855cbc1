// SPDX-FileCopyrightText: (c) 2026 regmin developers
//
// SPDX-License-Identifier: Apache-2.0

#ifndef REGMIN_DRIVER_HPP
#define REGMIN_DRIVER_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "regmin/metric_policy.hpp"
#include "regmin/problems.hpp"
#include "regmin/subsolver.hpp"

namespace regmin {

enum class Acceptance { ratio_m, ratio_q, always };
enum class SigmaRuleKind { constant, adaptive };
enum class SubsolverKind { secular, descent };
enum class RunStatus { converged, stalled, maxiter };

const char* to_string(Acceptance a);
const char* to_string(SigmaRuleKind k);
const char* to_string(SubsolverKind k);
const char* to_string(RunStatus s);
Acceptance acceptance_from_string(const std::string& s);
SigmaRuleKind sigma_rule_from_string(const std::string& s);
SubsolverKind subsolver_from_string(const std::string& s);
RunStatus run_status_from_string(const std::string& s);

struct SigmaRule {
  SigmaRuleKind kind = SigmaRuleKind::constant;
  double sigma_bar = 1.0;   // constant rule
  double gamma_inc = 2.0;   // adaptive rule
  double gamma_dec = 0.5;
  double sigma_init = 1.0;

  double initial(double sigma_max) const;
};

struct SolverConfig {
  double r = 3.0;
  double tau = 0.0;
  double eta = 0.1;
  double sigma_max = 1.0;
  SigmaRule sigma_rule;
  Acceptance acceptance = Acceptance::ratio_m;
  // Stop once ||grad f(x_k)|| <= grad_tol; values <= 0 select
  // 1e-8 * (1 + ||grad f(x_0)||).
  double grad_tol = 0.0;
  int max_iters = 10000;
  // Consecutive rejections with sigma pinned before the run is declared stalled.
  int patience = 50;
  SubsolverKind subsolver = SubsolverKind::secular;
  double secular_tol = 1e-12;
  int max_inner = 200000;
};

/// Throws InvalidArgument on out-of-range parameters.
void validate(const SolverConfig& cfg);

struct IterationRecord {
  std::size_t k = 0;
  Vec x;
  double f_x = 0.0;
  double grad_norm = 0.0;
  double sigma = 0.0;
  Vec s;
  double s_norm = 0.0;
  double model_grad_norm = 0.0;
  double model_decrease = 0.0;
  std::optional<double> rho;
  bool accepted = false;
};

/// Output of one run. records[k] describes the transition x_k -> x_{k+1};
/// x_{k+1} is records[k+1].x, or x_final for the last record.
struct Trace {
  std::string problem;
  std::string algorithm;
  SolverConfig config;
  MetricPolicy policy;
  double grad_tol = 0.0;  // resolved stopping threshold
  std::vector<IterationRecord> records;
  Vec x0;
  double f0 = 0.0;
  Vec x_final;
  double f_final = 0.0;
  double gnorm_final = 0.0;
  RunStatus status = RunStatus::maxiter;

  std::size_t iterations() const { return records.size(); }
  /// x_k for k in [0, iterations()].
  const Vec& iterate(std::size_t k) const;
  double f_at(std::size_t k) const;
};

struct AcceptDecision {
  bool accepted = false;
  std::optional<double> rho;
  bool degenerate = false;  // ratio denominator nonpositive or below the noise floor
};

/// Ratio tests on f_k - f_trial against the m_k or q_k decrease.
/// Denominators <= 1e-14 * |f_k| are treated as model failure: reject, flag.
AcceptDecision accept_step(double f_k, double f_trial, double dec_m, double dec_q, Acceptance rule,
                           double eta);

double next_sigma(const SigmaRule& rule, double sigma_k, bool accepted, double sigma_max);

/// Absolute allowance on the inexactness test for roundoff in grad m_k(s).
inline constexpr double kStationarityFloor = 1e-12;

/// ||grad m_k(s)|| <= tau ||s|| min(||s||, 1) + kStationarityFloor.
bool inexactness_holds(double model_grad_norm, double s_norm, double tau);

/// General scheme with ratio-based acceptance. Requires acceptance in
/// {ratio_m, ratio_q} and a > 2 tau.
Trace run_algorithm1(const Problem& p, const Vec& x0, const SolverConfig& cfg, const MetricPolicy& pol);

/// Always-accept scheme. Requires acceptance = always, the problem's
/// Lipschitz constant, eta in (0, 1) and a >= 2 tau + L / (1 - eta).
Trace run_algorithm2(const Problem& p, const Vec& x0, const SolverConfig& cfg, const MetricPolicy& pol);

struct GradientMethodSetup {
  SolverConfig config;
  MetricPolicy policy;
};

/// tau = 0, sigma = 0, Q_k = I / alpha, eta = 2 gamma, ratio_m acceptance:
/// the step is s_k = -alpha grad f(x_k) with model decrease (alpha/2) ||grad f||^2.
GradientMethodSetup gradient_method_config(int n, double alpha, double gamma);

}  // namespace regmin

#endif  // REGMIN_DRIVER_HPP
