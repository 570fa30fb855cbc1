// SPDX-FileCopyrightText: (c) 2026 regmin developers
//
// SPDX-License-Identifier: Apache-2.0

#ifndef REGMIN_FEJER_MONITOR_HPP
#define REGMIN_FEJER_MONITOR_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "regmin/driver.hpp"

namespace regmin {

/// Q_k for k = 0, 1, ...; queried with nondecreasing k.
using MatrixSource = std::function<std::shared_ptr<const SymMatrix>(std::size_t)>;

/// Regenerates the metric sequence of a policy.
MatrixSource matrices_from(const MetricPolicy& pol);
/// Serves an explicit list; k past the end repeats the last matrix.
MatrixSource matrices_from(std::vector<SymMatrix> Qs);

/// One instance of the variable-metric quasi-Fejer inequality
///   ||x_{k+1} - y||^2_{Q_{k+1}} <= (1 + psi_k) ||x_k - y||^2_{Q_k} + theta_k ||x_k - y|| + eps_k
/// with, on successful iterations,
///   eps_k   = (1 + psi_k) ||s_k||^2_{Q_k}
///   theta_k = 2 (1 + psi_k) (||grad m_k(s_k)|| + sigma_k ||s_k||^{r-1})
/// and theta_k = eps_k = 0 otherwise.
struct FejerCertificate {
  std::size_t k = 0;
  double psi = 0.0;
  double theta = 0.0;
  double eps = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double dist = 0.0;  // ||x_k - y||
};

/// Throws CertificationError when f_y exceeds the final objective value
/// (y outside F = {x : f(x) <= lim f(x_k)}).
std::vector<FejerCertificate> build_certificates(const Trace& trace, const MatrixSource& Qs,
                                                 const std::function<double(std::size_t)>& psi,
                                                 const Vec& y, double f_y);

/// Theta-free reduction: psi~_k = psi_k + theta_k / a, eps~_k = eps_k + theta_k.
/// The reduced pair satisfies the theta-free inequality.
struct FoldedSequences {
  std::vector<double> psi;
  std::vector<double> eps;
};
FoldedSequences fold_theta(const std::vector<FejerCertificate>& certs, double a);

struct RadiusReport {
  std::vector<double> lhs;    // a ||x_k - y||^2, k = 0..K
  std::vector<double> bound;  // zeta_k (||x_0 - y||^2_{Q_0} + sum_{i<k} eps_i)
  double worst_margin = 0.0;  // min_k (bound - lhs)
  bool ok = true;
  double R_hat = 0.0;          // sqrt(max_k bound_k / a), bounds ||x_k - y||
  double max_dist = 0.0;       // max_k ||x_k - y||
  double max_iterate_norm = 0.0;
  bool bounded_ok = true;      // max_k ||x_k|| <= ||y|| + R_hat
};

/// Finite recursion behind the radius bound, with t = 0:
///   a ||x_k - y||^2 <= prod_{i<k}(1 + psi_i) (||x_0 - y||^2_{Q_0} + sum_{i<k} eps_i) + tol.
RadiusReport check_radius(const Trace& trace, const SymMatrix& Q0, const std::vector<double>& psi,
                          const std::vector<double>& eps, const Vec& y, double a, double tol);

struct SummabilityReport {
  std::size_t accepted = 0;
  double sum_s2 = 0.0;
  double sum_s_rm1 = 0.0;  // sum ||s_k||^{r-1}
  double sum_model_grad = 0.0;
  double sum_theta = 0.0;
  double sum_eps = 0.0;
  double step_sum_bound = 0.0;  // (f(x_0) - f_final) / (eta c)
  bool step_sum_ok = true;
  bool model_grad_ok = true;  // ||grad m_k(s_k)|| <= tau ||s_k||^2 whenever ||s_k|| <= 1
  // (S_K - S_{K - ceil(K/4)}) / S_K over the records, 0 for an empty sum.
  double growth_s2 = 0.0;
  double growth_s_rm1 = 0.0;
  double growth_model_grad = 0.0;
  double growth_theta = 0.0;
  double growth_eps = 0.0;
};

/// Partial sums over successful iterations. c = a/2 - tau.
/// certs may be empty, in which case theta/eps sums stay 0.
SummabilityReport summability_report(const Trace& trace, double a,
                                     const std::vector<FejerCertificate>& certs);

struct RateReport {
  double c = 0.0;
  double b_hat = 0.0;
  double T_hat = 0.0;
  double nu_hat = 0.0;
  double R_hat = 0.0;
  double delta0 = 0.0;
  std::vector<double> bound;  // bound[k-1] for k = 1..K
  double worst_margin = 0.0;
  bool ok = true;
  double max_k_gap = 0.0;  // max_k k (f(x_k) - f*)
  bool k_gap_ok = true;    // max_k_gap <= R_hat^2 / nu_hat
};

/// nu = eta c / (tau + b_hat + sigma_max T_hat^{r-2})^2, b_hat = max ||Q_k||,
/// T_hat = max accepted ||s_k||; asserts
///   f(x_k) - f* <= R^2 D0 / (R^2 + nu k D0) + tol   for k >= 1.
RateReport rate_check(const Trace& trace, double f_star, double R_hat, double b_hat, double tol);

/// Everything the certify/rate commands report for one trace.
struct CertifyOptions {
  std::optional<Vec> y;  // default: the problem's minimizer
  double tol = -1.0;     // < 0: 1e-8 (1e-6 for derived references), scaled by (1 + ||x_0 - y||^2)
};

struct CertifyResult {
  Vec y;
  bool y_derived = false;
  double tol = 0.0;
  std::vector<FejerCertificate> certs;
  double min_slack = 0.0;
  bool certificates_ok = true;
  SequenceReport metrics;
  double b_hat = 0.0;
  RadiusReport radius;          // theta folded into psi and eps
  RadiusReport radius_literal;  // psi, eps without theta
  SummabilityReport sums;
  double T_hat = 0.0;
  double nu_hat = 0.0;
  std::optional<RateReport> rate;  // convex problems with known f*
};

CertifyResult certify(const Problem& p, const Trace& trace, const CertifyOptions& opts = {});

}  // namespace regmin

#endif  // REGMIN_FEJER_MONITOR_HPP
