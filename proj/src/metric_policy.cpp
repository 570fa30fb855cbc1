// SPDX-FileCopyrightText: (c) 2026 regmin developers
//
// SPDX-License-Identifier: Apache-2.0

#include "regmin/metric_policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace regmin {

namespace {
constexpr double kFloorSlack = 8.0 * std::numeric_limits<double>::epsilon();
}

const char* to_string(PolicyKind k) {
  switch (k) {
    case PolicyKind::constant:
      return "constant";
    case PolicyKind::inflated:
      return "inflated";
    case PolicyKind::shrink_to_floor:
      break;
  }
  return "shrink";
}

PolicyKind policy_kind_from_string(const std::string& s) {
  if (s == "constant") return PolicyKind::constant;
  if (s == "inflated") return PolicyKind::inflated;
  if (s == "shrink" || s == "shrink_to_floor") return PolicyKind::shrink_to_floor;
  throw InvalidArgument("unknown metric policy '" + s + "' (expected constant|inflated|shrink)");
}

MetricPolicy MetricPolicy::make(PolicyKind kind, Mat Q0, double a, double psi0, double shrink) {
  require(a > 0.0 && std::isfinite(a), "MetricPolicy: a must be positive");
  require(psi0 >= 0.0 && std::isfinite(psi0), "MetricPolicy: psi0 must be >= 0");
  require(shrink > 0.0 && shrink <= 1.0, "MetricPolicy: shrink weight must lie in (0, 1]");
  MetricPolicy pol;
  pol.kind = kind;
  pol.Q0 = std::make_shared<const SymMatrix>(std::move(Q0));
  pol.a = a;
  pol.psi0 = psi0;
  pol.shrink = shrink;
  if (pol.Q0->min_eigenvalue() < a * (1.0 - kFloorSlack)) {
    std::ostringstream os;
    os << "MetricPolicy: eigmin(Q0) = " << pol.Q0->min_eigenvalue() << " is below the floor a = " << a;
    throw InvalidArgument(os.str());
  }
  return pol;
}

MetricPolicy MetricPolicy::scaled_identity(PolicyKind kind, int n, double a, double psi0,
                                           double q0_scale) {
  require(n >= 1, "MetricPolicy: dimension must be positive");
  const double scale = q0_scale > 0.0 ? q0_scale : a;
  return make(kind, scale * Mat::Identity(n, n), a, psi0);
}

double MetricPolicy::psi(std::size_t k) const {
  const double d = static_cast<double>(k) + 1.0;
  return psi0 / (d * d);
}

std::shared_ptr<const SymMatrix> next_matrix(const MetricPolicy& pol, std::size_t k,
                                             const std::shared_ptr<const SymMatrix>& prev) {
  if (k == 0 || pol.kind == PolicyKind::constant) return pol.Q0;
  require(prev != nullptr, "next_matrix: previous matrix required for k >= 1");
  require_dim(prev->dim(), pol.dim(), "next_matrix");

  std::shared_ptr<const SymMatrix> next;
  if (pol.kind == PolicyKind::inflated) {
    next = std::make_shared<const SymMatrix>(prev->affine(1.0 + pol.psi(k - 1), 0.0));
  } else {
    next = std::make_shared<const SymMatrix>(prev->affine(1.0 - pol.shrink, pol.shrink * pol.a));
  }
  if (next->min_eigenvalue() < pol.a * (1.0 - kFloorSlack)) {
    std::ostringstream os;
    os << "next_matrix: eigenvalue floor violated at k=" << k << " (" << next->min_eigenvalue()
       << " < " << pol.a << ")";
    throw SolverError(os.str());
  }
  return next;
}

MatrixStream::MatrixStream(MetricPolicy pol) : pol_(std::move(pol)), current_(pol_.Q0) {}

const std::shared_ptr<const SymMatrix>& MatrixStream::at(std::size_t k) {
  require(k >= index_, "MatrixStream: indices must be nondecreasing");
  while (index_ < k) {
    ++index_;
    current_ = next_matrix(pol_, index_, current_);
  }
  return current_;
}

double condition2_floor(double tau, double eta, double L) { return 2.0 * tau + L / (1.0 - eta); }

void require_condition1(const MetricPolicy& pol, double tau) {
  if (!(pol.a > 2.0 * tau)) {
    std::ostringstream os;
    os << "Condition 1 requires a > 2 tau (a = " << pol.a << ", tau = " << tau << ")";
    throw PreconditionViolation(os.str());
  }
}

void require_condition2(const MetricPolicy& pol, double tau, double eta, double L) {
  if (!(eta > 0.0 && eta < 1.0)) throw PreconditionViolation("Condition 2 requires eta in (0, 1)");
  if (!(L > 0.0)) throw PreconditionViolation("Condition 2 requires a positive Lipschitz constant L");
  const double floor = condition2_floor(tau, eta, L);
  if (pol.a < floor * (1.0 - kFloorSlack)) {
    std::ostringstream os;
    os << "Condition 2 requires a >= 2 tau + L / (1 - eta) = " << floor << " (a = " << pol.a << ")";
    throw PreconditionViolation(os.str());
  }
}

SequenceReport validate_sequence(const std::vector<SymMatrix>& Qs, double a,
                                 const std::vector<double>& psi, double tol) {
  SequenceReport rep;
  if (Qs.empty()) return rep;
  require(psi.size() + 1 >= Qs.size(), "validate_sequence: psi sequence too short");
  const int n = Qs.front().dim();
  rep.norm_Q0 = Qs.front().norm();
  for (std::size_t k = 0; k < Qs.size(); ++k) {
    require_dim(Qs[k].dim(), n, "validate_sequence");
    const double margin = Qs[k].min_eigenvalue() - a;
    rep.floor_margin.push_back(margin);
    rep.floor_ok = rep.floor_ok && margin >= -tol;
    rep.b_hat = std::max(rep.b_hat, Qs[k].norm());
    if (k + 1 < Qs.size()) {
      require(psi[k] >= 0.0, "validate_sequence: psi must be nonnegative");
      const Mat gap = (1.0 + psi[k]) * Qs[k].matrix() - Qs[k + 1].matrix();
      Eigen::SelfAdjointEigenSolver<Mat> eig(0.5 * (gap + gap.transpose()), Eigen::EigenvaluesOnly);
      const double order = eig.eigenvalues()[0];
      rep.order_margin.push_back(order);
      rep.order_ok = rep.order_ok && order >= -tol;
      rep.zeta_hat *= 1.0 + psi[k];
    }
  }
  rep.bound_ok = rep.b_hat <= rep.zeta_hat * rep.norm_Q0 + tol;
  return rep;
}

}  // namespace regmin
