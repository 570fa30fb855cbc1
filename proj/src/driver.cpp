// SPDX-FileCopyrightText: (c) 2026 regmin developers
//
// SPDX-License-Identifier: Apache-2.0

#include "regmin/driver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace regmin {

const char* to_string(Acceptance a) {
  switch (a) {
    case Acceptance::ratio_m:
      return "ratio_m";
    case Acceptance::ratio_q:
      return "ratio_q";
    case Acceptance::always:
      break;
  }
  return "always";
}

const char* to_string(SigmaRuleKind k) { return k == SigmaRuleKind::constant ? "constant" : "adaptive"; }

const char* to_string(SubsolverKind k) { return k == SubsolverKind::secular ? "secular" : "descent"; }

const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::converged:
      return "converged";
    case RunStatus::stalled:
      return "stalled";
    case RunStatus::maxiter:
      break;
  }
  return "maxiter";
}

Acceptance acceptance_from_string(const std::string& s) {
  if (s == "ratio_m") return Acceptance::ratio_m;
  if (s == "ratio_q") return Acceptance::ratio_q;
  if (s == "always") return Acceptance::always;
  throw InvalidArgument("unknown acceptance rule '" + s + "' (expected ratio_m|ratio_q|always)");
}

SigmaRuleKind sigma_rule_from_string(const std::string& s) {
  if (s == "constant") return SigmaRuleKind::constant;
  if (s == "adaptive") return SigmaRuleKind::adaptive;
  throw InvalidArgument("unknown sigma rule '" + s + "' (expected constant|adaptive)");
}

SubsolverKind subsolver_from_string(const std::string& s) {
  if (s == "secular") return SubsolverKind::secular;
  if (s == "descent") return SubsolverKind::descent;
  throw InvalidArgument("unknown subsolver '" + s + "' (expected secular|descent)");
}

RunStatus run_status_from_string(const std::string& s) {
  if (s == "converged") return RunStatus::converged;
  if (s == "stalled") return RunStatus::stalled;
  if (s == "maxiter") return RunStatus::maxiter;
  throw InvalidArgument("unknown run status '" + s + "'");
}

double SigmaRule::initial(double sigma_max) const {
  const double start = kind == SigmaRuleKind::constant ? sigma_bar : sigma_init;
  return std::clamp(start, 0.0, sigma_max);
}

void validate(const SolverConfig& cfg) {
  require(std::isfinite(cfg.r) && cfg.r >= 3.0, "config: r must be >= 3");
  require(std::isfinite(cfg.tau) && cfg.tau >= 0.0, "config: tau must be >= 0");
  require(std::isfinite(cfg.eta) && cfg.eta > 0.0, "config: eta must be > 0");
  require(std::isfinite(cfg.sigma_max) && cfg.sigma_max >= 0.0, "config: sigma_max must be >= 0");
  const SigmaRule& sr = cfg.sigma_rule;
  if (sr.kind == SigmaRuleKind::constant) {
    require(sr.sigma_bar >= 0.0 && sr.sigma_bar <= cfg.sigma_max,
            "config: constant sigma must lie in [0, sigma_max]");
  } else {
    require(sr.gamma_inc >= 1.0, "config: gamma_inc must be >= 1");
    require(sr.gamma_dec > 0.0 && sr.gamma_dec <= 1.0, "config: gamma_dec must lie in (0, 1]");
    require(sr.sigma_init >= 0.0, "config: sigma_init must be >= 0");
  }
  require(cfg.max_iters >= 0, "config: max_iters must be >= 0");
  require(cfg.patience >= 1, "config: patience must be >= 1");
  require(cfg.secular_tol > 0.0, "config: secular_tol must be > 0");
  require(cfg.max_inner >= 1, "config: max_inner must be >= 1");
}

const Vec& Trace::iterate(std::size_t k) const {
  require(k <= records.size(), "Trace::iterate: index out of range");
  return k < records.size() ? records[k].x : x_final;
}

double Trace::f_at(std::size_t k) const {
  require(k <= records.size(), "Trace::f_at: index out of range");
  return k < records.size() ? records[k].f_x : f_final;
}

AcceptDecision accept_step(double f_k, double f_trial, double dec_m, double dec_q, Acceptance rule,
                           double eta) {
  AcceptDecision out;
  if (rule == Acceptance::always) {
    out.accepted = true;
    if (dec_m > 0.0) out.rho = (f_k - f_trial) / dec_m;
    return out;
  }
  const double denom = rule == Acceptance::ratio_m ? dec_m : dec_q;
  if (!(denom > 1e-14 * std::abs(f_k))) {
    out.degenerate = true;
    return out;
  }
  out.rho = (f_k - f_trial) / denom;
  out.accepted = *out.rho >= eta;
  return out;
}

double next_sigma(const SigmaRule& rule, double sigma_k, bool accepted, double sigma_max) {
  if (rule.kind == SigmaRuleKind::constant) return std::clamp(rule.sigma_bar, 0.0, sigma_max);
  const double next = accepted ? rule.gamma_dec * sigma_k : rule.gamma_inc * sigma_k;
  return std::clamp(next, 0.0, sigma_max);
}

bool inexactness_holds(double model_grad_norm, double s_norm, double tau) {
  return model_grad_norm <= tau * s_norm * std::min(s_norm, 1.0) + kStationarityFloor;
}

namespace {

double checked_f(const Problem& p, const Vec& x, std::size_t k) {
  const double v = p.f(x);
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << "non-finite objective value at iteration " << k << " of " << p.name;
    throw SolverError(os.str());
  }
  return v;
}

Vec checked_grad(const Problem& p, const Vec& x, std::size_t k) {
  Vec g = p.grad(x);
  if (!g.allFinite()) {
    std::ostringstream os;
    os << "non-finite gradient at iteration " << k << " of " << p.name;
    throw SolverError(os.str());
  }
  return g;
}

SubsolveResult compute_step(const ModelState& st, const SolverConfig& cfg) {
  if (cfg.subsolver == SubsolverKind::descent && cfg.tau > 0.0)
    return solve_descent(st, cfg.tau, cfg.max_inner);
  return solve_secular(st, cfg.secular_tol);
}

Trace run_scheme(const Problem& p, const Vec& x0, const SolverConfig& cfg, const MetricPolicy& pol,
                 const char* algorithm) {
  require_dim(x0.size(), p.dim, "run: starting point");
  require_dim(pol.dim(), p.dim, "run: metric policy");
  require(x0.allFinite(), "run: starting point must be finite");

  Trace tr;
  tr.problem = p.name;
  tr.algorithm = algorithm;
  tr.config = cfg;
  tr.policy = pol;
  tr.x0 = x0;

  Vec x = x0;
  double fx = checked_f(p, x, 0);
  Vec g = checked_grad(p, x, 0);
  tr.f0 = fx;
  tr.grad_tol = cfg.grad_tol > 0.0 ? cfg.grad_tol : 1e-8 * (1.0 + g.norm());

  MatrixStream metrics(pol);
  double sigma = cfg.sigma_rule.initial(cfg.sigma_max);
  int pinned_rejections = 0;
  tr.status = RunStatus::maxiter;

  for (std::size_t k = 0;; ++k) {
    if (g.norm() <= tr.grad_tol) {
      tr.status = RunStatus::converged;
      break;
    }
    if (k >= static_cast<std::size_t>(cfg.max_iters)) break;

    const ModelState st = ModelState::make(x, fx, g, metrics.at(k), sigma, cfg.r);
    SubsolveResult step = compute_step(st, cfg);
    const double sn = step.s.norm();
    if (!inexactness_holds(step.grad_norm, sn, cfg.tau)) {
      std::ostringstream os;
      os << "subsolver step violates the inexactness condition at k=" << k << " (||grad m||="
         << step.grad_norm << ", ||s||=" << sn << ")";
      throw SolverError(os.str());
    }

    Vec trial = x + step.s;
    const double f_trial = checked_f(p, trial, k);
    const AcceptDecision decision = accept_step(fx, f_trial, step.model_decrease,
                                                quadratic_decrease(st, step.s), cfg.acceptance, cfg.eta);

    IterationRecord rec;
    rec.k = k;
    rec.x = x;
    rec.f_x = fx;
    rec.grad_norm = g.norm();
    rec.sigma = sigma;
    rec.s = std::move(step.s);
    rec.s_norm = sn;
    rec.model_grad_norm = step.grad_norm;
    rec.model_decrease = step.model_decrease;
    rec.rho = decision.rho;
    rec.accepted = decision.accepted;
    tr.records.push_back(std::move(rec));

    if (decision.accepted) {
      x = std::move(trial);
      fx = f_trial;
      g = checked_grad(p, x, k + 1);
    }

    const double next = next_sigma(cfg.sigma_rule, sigma, decision.accepted, cfg.sigma_max);
    if (!decision.accepted && next <= sigma) {
      if (++pinned_rejections >= cfg.patience) {
        sigma = next;
        tr.status = RunStatus::stalled;
        break;
      }
    } else if (decision.accepted) {
      pinned_rejections = 0;
    }
    sigma = next;
  }

  tr.x_final = x;
  tr.f_final = fx;
  tr.gnorm_final = g.norm();
  return tr;
}

}  // namespace

Trace run_algorithm1(const Problem& p, const Vec& x0, const SolverConfig& cfg, const MetricPolicy& pol) {
  validate(cfg);
  if (cfg.acceptance == Acceptance::always)
    throw InvalidArgument("Algorithm 1 requires a ratio acceptance rule (ratio_m or ratio_q)");
  require_condition1(pol, cfg.tau);
  return run_scheme(p, x0, cfg, pol, "alg1");
}

Trace run_algorithm2(const Problem& p, const Vec& x0, const SolverConfig& cfg, const MetricPolicy& pol) {
  validate(cfg);
  if (cfg.acceptance != Acceptance::always)
    throw InvalidArgument("Algorithm 2 requires acceptance = always");
  if (!p.lipschitz_L) throw PreconditionViolation("Condition 2 requires L");
  require_condition2(pol, cfg.tau, cfg.eta, *p.lipschitz_L);
  return run_scheme(p, x0, cfg, pol, "alg2");
}

GradientMethodSetup gradient_method_config(int n, double alpha, double gamma) {
  require(alpha > 0.0 && std::isfinite(alpha), "gradient method: alpha must be > 0");
  require(gamma > 0.0 && gamma < 1.0, "gradient method: gamma must lie in (0, 1)");
  SolverConfig cfg;
  cfg.tau = 0.0;
  cfg.sigma_max = 0.0;
  cfg.sigma_rule.kind = SigmaRuleKind::constant;
  cfg.sigma_rule.sigma_bar = 0.0;
  cfg.eta = 2.0 * gamma;
  cfg.acceptance = Acceptance::ratio_m;
  const double a = 1.0 / alpha;
  return {cfg, MetricPolicy::scaled_identity(PolicyKind::constant, n, a)};
}

}  // namespace regmin
