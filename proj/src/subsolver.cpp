// SPDX-FileCopyrightText: (c) 2026 regmin developers
//
// SPDX-License-Identifier: Apache-2.0

#include "regmin/subsolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace regmin {

const char* to_string(SubsolveMethod m) {
  switch (m) {
    case SubsolveMethod::secular:
      return "secular";
    case SubsolveMethod::descent:
      return "descent";
    case SubsolveMethod::zero:
      break;
  }
  return "zero";
}

namespace {

SubsolveResult finish(const ModelState& st, Vec s, int iterations, SubsolveMethod method) {
  SubsolveResult out;
  out.grad_norm = model_gradient(st, s).norm();
  out.model_decrease = model_decrease(st, s);
  out.s = std::move(s);
  out.iterations = iterations;
  out.method = method;
  return out;
}

// Rotated gradient and shifted solve in the eigenbasis of Q.
struct Spectral {
  const SymMatrix& Q;
  Vec ghat;

  Spectral(const SymMatrix& q, const Vec& g) : Q(q), ghat(q.eigenvectors().transpose() * g) {}

  Vec solve(const Vec& rhs_hat, double mu) const {
    return Q.eigenvectors() * (rhs_hat.array() / (Q.eigenvalues().array() + mu)).matrix();
  }
  double step_norm(double mu) const {
    return (ghat.array() / (Q.eigenvalues().array() + mu)).matrix().norm();
  }
  // d/dmu ||s(mu)||
  double step_norm_slope(double mu, double norm) const {
    const auto denom = Q.eigenvalues().array() + mu;
    return -(ghat.array().square() / denom.cube()).sum() / norm;
  }
};

}  // namespace

double secular_step_norm(const SymMatrix& Q, const Vec& g, double mu) {
  require_dim(g.size(), Q.dim(), "secular_step_norm");
  require(mu >= 0.0, "secular_step_norm: mu must be >= 0");
  require(Q.min_eigenvalue() + mu > 0.0, "secular_step_norm: Q + mu I must be positive definite");
  return Spectral(Q, g).step_norm(mu);
}

SubsolveResult solve_secular(const ModelState& st, double tol) {
  require(tol > 0.0, "solve_secular: tol must be positive");
  const SymMatrix& Q = *st.Q;
  if (!(Q.min_eigenvalue() > 0.0)) {
    std::ostringstream os;
    os << "solve_secular: Q must be positive definite (min eigenvalue " << Q.min_eigenvalue() << ")";
    throw PreconditionViolation(os.str());
  }
  const double gnorm = st.g.norm();
  if (gnorm == 0.0) return finish(st, Vec::Zero(st.dim()), 0, SubsolveMethod::zero);

  const Spectral sp(Q, st.g);
  const Vec neg_ghat = -sp.ghat;
  double mu = 0.0;
  int iterations = 0;

  if (st.sigma > 0.0) {
    // Unknown t = ||s||, multiplier mu = sigma t^{r-2}:
    //   psi(t) = ||(Q + mu(t) I)^{-1} g|| - t,
    // decreasing, with psi(0) > 0 and psi(||Q^{-1} g||) <= 0. Working in t
    // keeps the bracket explicit and stays accurate for tiny sigma.
    const double p = st.r - 2.0;
    auto mu_of = [&](double t) { return st.sigma * std::pow(t, p); };
    auto psi = [&](double t) { return sp.step_norm(mu_of(t)) - t; };

    double lo = 0.0;
    double hi = sp.step_norm(0.0);
    double t = hi;
    double prev_width = 2.0 * hi;
    for (iterations = 1; iterations <= 500; ++iterations) {
      const double m = mu_of(t);
      const double norm = sp.step_norm(m);
      const double val = norm - t;
      if (val == 0.0) break;
      if (val > 0.0)
        lo = t;
      else
        hi = t;
      if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;

      // psi'(t) = (d||s||/dmu) * sigma p t^{p-1} - 1 < 0
      const double slope = sp.step_norm_slope(m, norm) * st.sigma * p * std::pow(t, p - 1.0) - 1.0;
      double next = t - val / slope;
      const double width = hi - lo;
      if (!(next > lo && next < hi) || width > 0.5 * prev_width) next = 0.5 * (lo + hi);
      prev_width = width;
      if (next == t) break;
      t = next;
    }
    const double resid = psi(t);
    if (std::abs(resid) > 1e-12 * (1.0 + t)) {
      std::ostringstream os;
      os << "solve_secular: root finder did not converge (residual " << resid << ", sigma=" << st.sigma
         << ", r=" << st.r << ", ||g||=" << gnorm << ")";
      throw SolverError(os.str());
    }
    mu = mu_of(t);
  }

  Vec s = sp.solve(neg_ghat, mu);
  // Iterative refinement with the shifted factorization already at hand.
  for (int pass = 0; pass < 3; ++pass) {
    const Vec resid = model_gradient(st, s);
    if (resid.norm() <= 0.01 * tol * std::max(1.0, gnorm)) break;
    const Vec correction = sp.solve(Q.eigenvectors().transpose() * resid, mu);
    const Vec candidate = s - correction;
    if (model_gradient(st, candidate).norm() >= resid.norm()) break;
    s = candidate;
  }

  SubsolveResult out = finish(st, std::move(s), iterations, SubsolveMethod::secular);
  if (!(out.grad_norm <= tol * std::max(1.0, gnorm))) {
    std::ostringstream os;
    os << "solve_secular: stationarity residual " << out.grad_norm << " exceeds " << tol
       << " * max(1, ||g||)";
    throw SolverError(os.str());
  }
  return out;
}

SubsolveResult solve_descent(const ModelState& st, double tau, int max_inner) {
  if (!(tau > 0.0)) throw PreconditionViolation("solve_descent: tau must be > 0 (use solve_secular for tau = 0)");
  require(max_inner > 0, "solve_descent: max_inner must be positive");
  if (st.g.norm() == 0.0) return finish(st, Vec::Zero(st.dim()), 0, SubsolveMethod::zero);

  // Armijo on m(s + d) - m(s), expanded so the quadratic part never
  // cancels against m(s):
  //   (g + Q s)^T d + d^T Q d / 2 + (sigma / r) (||s + d||^r - ||s||^r).
  const Mat& Q = st.Q->matrix();
  auto change = [&](const Vec& s0, const Vec& Qs0, const Vec& d) {
    const double quad = (st.g + Qs0).dot(d) + 0.5 * d.dot(Q * d);
    if (st.sigma == 0.0) return quad;
    return quad + st.sigma / st.r * (norm_power((s0 + d).norm(), st.r) - norm_power(s0.norm(), st.r));
  };

  Vec s = Vec::Zero(st.dim());
  Vec Qs = Vec::Zero(st.dim());
  double step = 1.0 / (st.Q->norm() + st.sigma);
  for (int it = 1; it <= max_inner; ++it) {
    const Vec grad = model_gradient(st, s);
    const double sn = s.norm();
    if (sn > 0.0 && grad.norm() <= tau * sn * std::min(sn, 1.0))
      return finish(st, std::move(s), it - 1, SubsolveMethod::descent);

    const double gg = grad.squaredNorm();
    int halvings = 0;
    while (!(change(s, Qs, -step * grad) <= -1e-4 * step * gg)) {
      step *= 0.5;
      if (++halvings > 200) {
        std::ostringstream os;
        os << "solve_descent: line search failed at inner iteration " << it << " (residual "
           << std::sqrt(gg) << ")";
        throw SubsolverFailure(os.str(), finish(st, s, it, SubsolveMethod::descent));
      }
    }
    s -= step * grad;
    Qs = Q * s;
    step *= 2.0;
  }
  SubsolveResult last = finish(st, s, max_inner, SubsolveMethod::descent);
  std::ostringstream os;
  os << "solve_descent: inner budget of " << max_inner << " iterations exhausted (residual "
     << last.grad_norm << ", ||s|| " << last.s.norm() << ")";
  throw SubsolverFailure(os.str(), std::move(last));
}

}  // namespace regmin
