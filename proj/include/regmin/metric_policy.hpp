// SPDX-FileCopyrightText: (c) 2026 regmin developers
//
// SPDX-License-Identifier: Apache-2.0

#ifndef REGMIN_METRIC_POLICY_HPP
#define REGMIN_METRIC_POLICY_HPP

#include <cstddef>
#include <memory>
#include <vector>

#include "regmin/model.hpp"

namespace regmin {

enum class PolicyKind { constant, inflated, shrink_to_floor };

const char* to_string(PolicyKind k);
PolicyKind policy_kind_from_string(const std::string& s);

/// Rule producing the metric sequence {Q_k}.
///
/// psi_k = psi0 / (k + 1)^2, so sum_k psi_k = psi0 * pi^2 / 6.
///  - constant:        Q_k = Q0
///  - inflated:        Q_k = (1 + psi_{k-1}) Q_{k-1}
///  - shrink_to_floor: Q_k = (1 - shrink) Q_{k-1} + shrink * a I
/// Every policy keeps eigmin(Q_k) >= a and Q_k <= (1 + psi_{k-1}) Q_{k-1}.
struct MetricPolicy {
  PolicyKind kind = PolicyKind::constant;
  std::shared_ptr<const SymMatrix> Q0;
  double a = 1.0;
  double psi0 = 0.0;
  double shrink = 0.5;

  /// Validates a > 0, psi0 >= 0, shrink in (0, 1] and eigmin(Q0) >= a.
  static MetricPolicy make(PolicyKind kind, Mat Q0, double a, double psi0 = 0.0, double shrink = 0.5);
  /// Q0 = q0_scale * I (q0_scale defaults to a).
  static MetricPolicy scaled_identity(PolicyKind kind, int n, double a, double psi0 = 0.0,
                                      double q0_scale = 0.0);

  double psi(std::size_t k) const;
  int dim() const { return Q0->dim(); }
};

/// Q_k from Q_{k-1} (prev is ignored for k = 0). Throws SolverError if the
/// eigenvalue floor is violated, which would be a construction bug.
std::shared_ptr<const SymMatrix> next_matrix(const MetricPolicy& pol, std::size_t k,
                                             const std::shared_ptr<const SymMatrix>& prev);

/// Forward-only generator of Q_0, Q_1, ... for one run.
class MatrixStream {
 public:
  explicit MatrixStream(MetricPolicy pol);
  /// Q_k. Calls must be nondecreasing in k.
  const std::shared_ptr<const SymMatrix>& at(std::size_t k);
  const MetricPolicy& policy() const { return pol_; }

 private:
  MetricPolicy pol_;
  std::size_t index_ = 0;
  std::shared_ptr<const SymMatrix> current_;
};

/// Condition 1 pairing: a > 2 tau.
void require_condition1(const MetricPolicy& pol, double tau);
/// Condition 2 pairing: eta in (0, 1) and a >= 2 tau + L / (1 - eta).
void require_condition2(const MetricPolicy& pol, double tau, double eta, double L);
/// Smallest admissible floor under Condition 2.
double condition2_floor(double tau, double eta, double L);

struct SequenceReport {
  std::vector<double> floor_margin;  // eigmin(Q_k) - a
  std::vector<double> order_margin;  // eigmin((1 + psi_k) Q_k - Q_{k+1}), k < K-1
  double b_hat = 0.0;                // max_k ||Q_k||
  double zeta_hat = 1.0;             // prod_{k < K-1} (1 + psi_k)
  double norm_Q0 = 0.0;
  bool floor_ok = true;
  bool order_ok = true;
  bool bound_ok = true;  // b_hat <= zeta_hat * ||Q0|| + tol
  bool ok() const { return floor_ok && order_ok && bound_ok; }
};

/// Checks Condition 1 on an explicit matrix sequence. psi must hold at least
/// Qs.size() - 1 entries.
SequenceReport validate_sequence(const std::vector<SymMatrix>& Qs, double a,
                                 const std::vector<double>& psi, double tol);

}  // namespace regmin

#endif  // REGMIN_METRIC_POLICY_HPP
