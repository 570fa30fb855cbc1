// SPDX-FileCopyrightText: (c) 2026 regmin developers
//
// SPDX-License-Identifier: Apache-2.0

#ifndef REGMIN_SUBSOLVER_HPP
#define REGMIN_SUBSOLVER_HPP

#include "regmin/model.hpp"

namespace regmin {

enum class SubsolveMethod { secular, descent, zero };

const char* to_string(SubsolveMethod m);

struct SubsolveResult {
  Vec s;
  double grad_norm = 0.0;       // ||grad m_k(s)||
  double model_decrease = 0.0;  // m_k(0) - m_k(s)
  int iterations = 0;
  SubsolveMethod method = SubsolveMethod::zero;
};

/// Thrown by solve_descent when the inner budget runs out. Carries the last
/// iterate so callers can inspect how far it got.
class SubsolverFailure : public SolverError {
 public:
  SubsolverFailure(const std::string& what, SubsolveResult last)
      : SolverError(what), last_(std::move(last)) {}
  const SubsolveResult& last() const { return last_; }

 private:
  SubsolveResult last_;
};

/// Global minimizer of m_k through the secular equation.
///
/// With Q = V diag(w) V^T and g_hat = V^T g, the minimizer is
/// s(mu) = -(Q + mu I)^{-1} g where mu >= 0 solves
///   ||s(mu)|| = (mu / sigma)^{1/(r-2)}.
/// The left side decreases and the right side increases in mu, so the root is
/// unique. The solver works in t = ||s|| with mu = sigma t^{r-2}; the root lies
/// in [0, ||Q^{-1} g||] and is located by Newton steps safeguarded with
/// bisection. For sigma = 0 the step is -Q^{-1} g. Requires Q positive definite.
///
/// Postcondition: ||grad m_k(s)|| <= tol * max(1, ||g||), else SolverError.
SubsolveResult solve_secular(const ModelState& st, double tol = 1e-12);

/// Gradient descent with Armijo backtracking on s -> m_k(s), started at 0,
/// until stopping_satisfied(st, s, tau) holds at some s != 0. Model values
/// along the inner iterates are nonincreasing. Requires tau > 0.
SubsolveResult solve_descent(const ModelState& st, double tau, int max_inner = 200000);

/// ||(Q + mu I)^{-1} g||, the left side of the secular equation.
double secular_step_norm(const SymMatrix& Q, const Vec& g, double mu);

}  // namespace regmin

#endif  // REGMIN_SUBSOLVER_HPP
