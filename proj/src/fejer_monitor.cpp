// SPDX-FileCopyrightText: (c) 2026 regmin developers
//
// SPDX-License-Identifier: Apache-2.0

#include "regmin/fejer_monitor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace regmin {

MatrixSource matrices_from(const MetricPolicy& pol) {
  auto stream = std::make_shared<MatrixStream>(pol);
  return [stream](std::size_t k) { return stream->at(k); };
}

MatrixSource matrices_from(std::vector<SymMatrix> Qs) {
  require(!Qs.empty(), "matrices_from: empty matrix list");
  auto shared = std::make_shared<std::vector<std::shared_ptr<const SymMatrix>>>();
  for (auto& q : Qs) shared->push_back(std::make_shared<const SymMatrix>(std::move(q)));
  return [shared](std::size_t k) { return (*shared)[std::min(k, shared->size() - 1)]; };
}

std::vector<FejerCertificate> build_certificates(const Trace& trace, const MatrixSource& Qs,
                                                 const std::function<double(std::size_t)>& psi,
                                                 const Vec& y, double f_y) {
  require_dim(y.size(), trace.x0.size(), "build_certificates: reference point");
  const double allowance = 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(trace.f_final));
  if (f_y > trace.f_final + allowance) {
    std::ostringstream os;
    os << "reference point is not in the target set: f(y) = " << f_y << " > final f = " << trace.f_final;
    throw CertificationError(os.str());
  }

  std::vector<FejerCertificate> certs;
  certs.reserve(trace.iterations());
  std::shared_ptr<const SymMatrix> Qk = trace.iterations() > 0 ? Qs(0) : nullptr;
  for (std::size_t k = 0; k < trace.iterations(); ++k) {
    const IterationRecord& rec = trace.records[k];
    std::shared_ptr<const SymMatrix> Qnext = Qs(k + 1);
    const Vec d = rec.x - y;
    const Vec d_next = trace.iterate(k + 1) - y;

    FejerCertificate c;
    c.k = k;
    c.psi = psi(k);
    c.dist = d.norm();
    if (rec.accepted) {
      c.eps = (1.0 + c.psi) * Qk->quad_form(rec.s);
      c.theta = 2.0 * (1.0 + c.psi) *
                (rec.model_grad_norm + rec.sigma * norm_power(rec.s_norm, trace.config.r - 1.0));
    }
    c.lhs = Qnext->quad_form(d_next);
    c.rhs = (1.0 + c.psi) * Qk->quad_form(d) + c.theta * c.dist + c.eps;
    c.slack = c.rhs - c.lhs;
    certs.push_back(c);
    Qk = std::move(Qnext);
  }
  return certs;
}

FoldedSequences fold_theta(const std::vector<FejerCertificate>& certs, double a) {
  require(a > 0.0, "fold_theta: a must be positive");
  FoldedSequences out;
  for (const auto& c : certs) {
    out.psi.push_back(c.psi + c.theta / a);
    out.eps.push_back(c.eps + c.theta);
  }
  return out;
}

RadiusReport check_radius(const Trace& trace, const SymMatrix& Q0, const std::vector<double>& psi,
                          const std::vector<double>& eps, const Vec& y, double a, double tol) {
  const std::size_t K = trace.iterations();
  require(psi.size() >= K && eps.size() >= K, "check_radius: sequences shorter than the trace");
  require(a > 0.0, "check_radius: a must be positive");
  require_dim(y.size(), trace.x0.size(), "check_radius: reference point");

  RadiusReport rep;
  const double anchor = Q0.quad_form(trace.iterate(0) - y);
  double zeta = 1.0;
  double eps_sum = 0.0;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  double max_bound = 0.0;
  for (std::size_t k = 0; k <= K; ++k) {
    if (k > 0) {
      zeta *= 1.0 + psi[k - 1];
      eps_sum += eps[k - 1];
    }
    const Vec& xk = trace.iterate(k);
    const double dist = (xk - y).norm();
    const double lhs = a * dist * dist;
    const double bound = zeta * (anchor + eps_sum);
    rep.lhs.push_back(lhs);
    rep.bound.push_back(bound);
    rep.worst_margin = std::min(rep.worst_margin, bound - lhs);
    rep.ok = rep.ok && lhs <= bound + tol;
    max_bound = std::max(max_bound, bound);
    rep.max_dist = std::max(rep.max_dist, dist);
    rep.max_iterate_norm = std::max(rep.max_iterate_norm, xk.norm());
  }
  rep.R_hat = std::sqrt(max_bound / a);
  rep.bounded_ok = rep.max_iterate_norm <= y.norm() + rep.R_hat + std::sqrt(tol / a);
  return rep;
}

namespace {

double tail_growth(const std::vector<double>& terms) {
  const std::size_t K = terms.size();
  double total = 0.0;
  for (double t : terms) total += t;
  if (K == 0 || total == 0.0) return 0.0;
  const std::size_t tail = (K + 3) / 4;
  double late = 0.0;
  for (std::size_t k = K - tail; k < K; ++k) late += terms[k];
  return late / total;
}

}  // namespace

SummabilityReport summability_report(const Trace& trace, double a,
                                     const std::vector<FejerCertificate>& certs) {
  const SolverConfig& cfg = trace.config;
  require(certs.empty() || certs.size() == trace.iterations(),
          "summability_report: certificate count does not match the trace");
  SummabilityReport rep;
  std::vector<double> s2, srm1, mg, th, ep;
  for (std::size_t k = 0; k < trace.iterations(); ++k) {
    const IterationRecord& rec = trace.records[k];
    const bool on = rec.accepted;
    const double sn = rec.s_norm;
    s2.push_back(on ? sn * sn : 0.0);
    srm1.push_back(on ? norm_power(sn, cfg.r - 1.0) : 0.0);
    mg.push_back(on ? rec.model_grad_norm : 0.0);
    th.push_back(on && !certs.empty() ? certs[k].theta : 0.0);
    ep.push_back(on && !certs.empty() ? certs[k].eps : 0.0);
    if (on) {
      ++rep.accepted;
      if (sn <= 1.0 && rec.model_grad_norm > cfg.tau * sn * sn + kStationarityFloor) rep.model_grad_ok = false;
    }
  }
  auto sum = [](const std::vector<double>& v) {
    double t = 0.0;
    for (double x : v) t += x;
    return t;
  };
  rep.sum_s2 = sum(s2);
  rep.sum_s_rm1 = sum(srm1);
  rep.sum_model_grad = sum(mg);
  rep.sum_theta = sum(th);
  rep.sum_eps = sum(ep);
  rep.growth_s2 = tail_growth(s2);
  rep.growth_s_rm1 = tail_growth(srm1);
  rep.growth_model_grad = tail_growth(mg);
  rep.growth_theta = tail_growth(th);
  rep.growth_eps = tail_growth(ep);

  const double c = 0.5 * a - cfg.tau;
  require(c > 0.0, "summability_report: a/2 - tau must be positive");
  rep.step_sum_bound = (trace.f0 - trace.f_final) / (cfg.eta * c);
  rep.step_sum_ok = rep.sum_s2 <= rep.step_sum_bound * (1.0 + 1e-8);
  return rep;
}

RateReport rate_check(const Trace& trace, double f_star, double R_hat, double b_hat, double tol) {
  const SolverConfig& cfg = trace.config;
  RateReport rep;
  rep.c = 0.5 * trace.policy.a - cfg.tau;
  require(rep.c > 0.0, "rate_check: a/2 - tau must be positive");
  rep.b_hat = b_hat;
  for (const auto& rec : trace.records)
    if (rec.accepted) rep.T_hat = std::max(rep.T_hat, rec.s_norm);
  const double denom = cfg.tau + b_hat + cfg.sigma_max * norm_power(rep.T_hat, cfg.r - 2.0);
  rep.nu_hat = cfg.eta * rep.c / (denom * denom);
  rep.R_hat = R_hat;
  rep.delta0 = trace.f0 - f_star;

  const double R2 = R_hat * R_hat;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k <= trace.iterations(); ++k) {
    const double gap = trace.f_at(k) - f_star;
    const double kd = static_cast<double>(k);
    const double b = R2 > 0.0 ? R2 * rep.delta0 / (R2 + rep.nu_hat * kd * rep.delta0) : 0.0;
    rep.bound.push_back(b);
    rep.worst_margin = std::min(rep.worst_margin, b - gap);
    rep.ok = rep.ok && gap <= b + tol;
    rep.max_k_gap = std::max(rep.max_k_gap, kd * gap);
    if (rep.nu_hat > 0.0) rep.k_gap_ok = rep.k_gap_ok && kd * gap <= R2 / rep.nu_hat + kd * tol;
  }
  if (trace.iterations() == 0) rep.worst_margin = 0.0;
  return rep;
}

namespace {

// eigmin((1 + psi) A - B). Uses the shared eigenbasis when both matrices
// come from the same factorization.
double order_margin(const SymMatrix& A, const SymMatrix& B, double psi) {
  if (&A == &B) return psi * A.min_eigenvalue();
  if (A.eigenvectors() == B.eigenvectors())
    return ((1.0 + psi) * A.eigenvalues() - B.eigenvalues()).minCoeff();
  const Mat gap = (1.0 + psi) * A.matrix() - B.matrix();
  Eigen::SelfAdjointEigenSolver<Mat> eig(0.5 * (gap + gap.transpose()), Eigen::EigenvaluesOnly);
  return eig.eigenvalues()[0];
}

}  // namespace

CertifyResult certify(const Problem& p, const Trace& trace, const CertifyOptions& opts) {
  require_dim(trace.x0.size(), p.dim, "certify: trace dimension");
  CertifyResult out;
  if (opts.y) {
    out.y = *opts.y;
  } else if (p.minimizer) {
    out.y = *p.minimizer;
    out.y_derived = p.minimizer_derived;
  } else {
    throw CertificationError("certify: no reference point available for " + p.name);
  }
  require_dim(out.y.size(), p.dim, "certify: reference point");
  const double base = opts.tol >= 0.0 ? opts.tol : (out.y_derived ? 1e-6 : 1e-8);
  const double d0 = (trace.x0 - out.y).norm();
  out.tol = base * (1.0 + d0 * d0);

  const MetricPolicy& pol = trace.policy;
  auto psi = [&pol](std::size_t k) { return pol.psi(k); };
  out.certs = build_certificates(trace, matrices_from(pol), psi, out.y, p.f(out.y));
  out.min_slack = out.certs.empty() ? 0.0 : std::numeric_limits<double>::infinity();
  for (const auto& c : out.certs) {
    out.min_slack = std::min(out.min_slack, c.slack);
    if (c.slack < -out.tol) out.certificates_ok = false;
  }

  // Metric sequence checks, streamed so long runs never hold every Q_k.
  {
    MatrixStream stream(pol);
    SequenceReport& rep = out.metrics;
    rep.norm_Q0 = pol.Q0->norm();
    std::shared_ptr<const SymMatrix> prev = stream.at(0);
    for (std::size_t k = 0; k <= trace.iterations(); ++k) {
      const double margin = prev->min_eigenvalue() - pol.a;
      rep.floor_margin.push_back(margin);
      rep.floor_ok = rep.floor_ok && margin >= -1e-12 * pol.a;
      rep.b_hat = std::max(rep.b_hat, prev->norm());
      if (k == trace.iterations()) break;
      std::shared_ptr<const SymMatrix> next = stream.at(k + 1);
      const double om = order_margin(*prev, *next, pol.psi(k));
      rep.order_margin.push_back(om);
      rep.order_ok = rep.order_ok && om >= -1e-12 * prev->norm();
      rep.zeta_hat *= 1.0 + pol.psi(k);
      prev = std::move(next);
    }
    rep.bound_ok = rep.b_hat <= rep.zeta_hat * rep.norm_Q0 * (1.0 + 1e-12);
    out.b_hat = rep.b_hat;
  }

  const FoldedSequences folded = fold_theta(out.certs, pol.a);
  out.radius = check_radius(trace, *pol.Q0, folded.psi, folded.eps, out.y, pol.a, base);
  std::vector<double> plain_psi, plain_eps;
  for (const auto& c : out.certs) {
    plain_psi.push_back(c.psi);
    plain_eps.push_back(c.eps);
  }
  out.radius_literal = check_radius(trace, *pol.Q0, plain_psi, plain_eps, out.y, pol.a, base);

  out.sums = summability_report(trace, pol.a, out.certs);

  const SolverConfig& cfg = trace.config;
  for (const auto& rec : trace.records)
    if (rec.accepted) out.T_hat = std::max(out.T_hat, rec.s_norm);
  const double c = 0.5 * pol.a - cfg.tau;
  const double denom = cfg.tau + out.b_hat + cfg.sigma_max * norm_power(out.T_hat, cfg.r - 2.0);
  out.nu_hat = c > 0.0 ? cfg.eta * c / (denom * denom) : 0.0;

  if (p.convexity == ConvexityClass::convex && p.f_star)
    out.rate = rate_check(trace, *p.f_star, out.radius.R_hat, out.b_hat, 1e-10);
  return out;
}

}  // namespace regmin
