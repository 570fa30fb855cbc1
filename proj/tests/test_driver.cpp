// SPDX-FileCopyrightText: (c) 2026 regmin developers
//
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "regmin/driver.hpp"

using namespace regmin;

namespace {

SolverConfig constant_sigma(double sigma, double sigma_max, double tau, double eta, Acceptance acc) {
  SolverConfig cfg;
  cfg.sigma_rule.kind = SigmaRuleKind::constant;
  cfg.sigma_rule.sigma_bar = sigma;
  cfg.sigma_max = sigma_max;
  cfg.tau = tau;
  cfg.eta = eta;
  cfg.acceptance = acc;
  cfg.grad_tol = 1e-10;
  return cfg;
}

Vec start2() {
  Vec x(2);
  x << 1.5, -0.8;
  return x;
}

}  // namespace

TEST_CASE("accept_step") {
  const AcceptDecision exact = accept_step(1.0, 0.5, 0.5, 0.5, Acceptance::ratio_m, 0.9);
  CHECK(exact.accepted);
  CHECK(*exact.rho == doctest::Approx(1.0));

  const AcceptDecision poor = accept_step(1.0, 0.96, 0.5, 0.5, Acceptance::ratio_m, 0.1);
  CHECK_FALSE(poor.accepted);
  CHECK(*poor.rho == doctest::Approx(0.08));

  CHECK(accept_step(1.0, 5.0, -1.0, -1.0, Acceptance::always, 0.5).accepted);

  const AcceptDecision bad = accept_step(1.0, 0.9, 0.0, 0.5, Acceptance::ratio_m, 0.1);
  CHECK_FALSE(bad.accepted);
  CHECK(bad.degenerate);
  // ratio_q uses the quadratic decrease as denominator.
  CHECK(accept_step(1.0, 0.9, 0.0, 0.5, Acceptance::ratio_q, 0.1).accepted);
}

TEST_CASE("next_sigma") {
  SigmaRule c;
  c.kind = SigmaRuleKind::constant;
  c.sigma_bar = 1.0;
  CHECK(next_sigma(c, 7.0, false, 10.0) == 1.0);
  CHECK(next_sigma(c, 7.0, true, 10.0) == 1.0);

  SigmaRule a;
  a.kind = SigmaRuleKind::adaptive;
  a.gamma_inc = 4.0;
  a.gamma_dec = 0.5;
  CHECK(next_sigma(a, 1.0, false, 10.0) == 4.0);
  CHECK(next_sigma(a, 8.0, false, 10.0) == 10.0);
  CHECK(next_sigma(a, 8.0, true, 10.0) == 4.0);
}

TEST_CASE("algorithm 1 on the diagonal quadratic with Q = L I") {
  const Problem p = make_problem("quad-d2");
  const SolverConfig cfg = constant_sigma(1.0, 1.0, 0.0, 0.1, Acceptance::ratio_m);
  const MetricPolicy pol = MetricPolicy::scaled_identity(PolicyKind::constant, 2, 4.0);
  const Trace tr = run_algorithm1(p, start2(), cfg, pol);
  CHECK(tr.status == RunStatus::converged);
  CHECK(tr.gnorm_final <= 1e-8);
  CHECK(tr.iterations() > 0);
  for (const auto& r : tr.records) CHECK(r.accepted);
}

TEST_CASE("starting at the minimizer stops at k = 0") {
  for (const auto& name : catalog_names()) {
    const Problem p = make_problem(name);
    const MetricPolicy pol = MetricPolicy::scaled_identity(PolicyKind::constant, p.dim, 1.0);
    const Trace tr = run_algorithm1(p, *p.minimizer, constant_sigma(1.0, 1.0, 0.0, 0.1, Acceptance::ratio_m), pol);
    CAPTURE(name);
    CHECK(tr.iterations() == 0);
    CHECK(tr.status == RunStatus::converged);
  }
}

TEST_CASE("gradient method embedding") {
  const Problem p = make_problem("dquad-d5-k10");
  const double alpha = 1.0 / *p.lipschitz_L;
  const GradientMethodSetup gm = gradient_method_config(p.dim, alpha, 0.5);
  CHECK(gm.config.tau == 0.0);
  CHECK(gm.config.sigma_max == 0.0);
  CHECK(gm.config.eta == 1.0);
  SolverConfig cfg = gm.config;
  cfg.grad_tol = 1e-10;
  const Trace tr = run_algorithm1(p, p.default_start, cfg, gm.policy);
  REQUIRE(tr.iterations() > 0);
  for (const auto& r : tr.records) {
    const Vec g = eval_grad(p, r.x);
    CHECK((r.s + alpha * g).norm() <= 1e-12 * std::max(1.0, alpha * g.norm()));
    CHECK(std::abs(r.model_decrease - 0.5 * alpha * g.squaredNorm()) <= 1e-12 * (1.0 + r.model_decrease));
    CHECK(r.accepted);
  }
  for (std::size_t k = 0; k < tr.iterations(); ++k) {
    const Vec expect = tr.iterate(k) - alpha * eval_grad(p, tr.iterate(k));
    CHECK((tr.iterate(k + 1) - expect).norm() <= 1e-12 * (1.0 + expect.norm()));
  }
  CHECK(tr.status == RunStatus::converged);
}

TEST_CASE("algorithm 2 requires L and Condition 2") {
  const Problem quartic = make_problem("quartic-d3");
  const SolverConfig cfg = constant_sigma(1.0, 1.0, 0.01, 0.5, Acceptance::always);
  const MetricPolicy pol = MetricPolicy::scaled_identity(PolicyKind::constant, 3, 10.0);
  CHECK_THROWS_WITH_AS(run_algorithm2(quartic, quartic.default_start, cfg, pol), "Condition 2 requires L",
                       PreconditionViolation);

  const Problem q = make_problem("quad-d2");
  const MetricPolicy low = MetricPolicy::scaled_identity(PolicyKind::constant, 2, 8.0);
  CHECK_THROWS_AS(run_algorithm2(q, start2(), cfg, low), PreconditionViolation);
  CHECK_THROWS_AS(run_algorithm2(q, start2(), constant_sigma(1, 1, 0.01, 0.5, Acceptance::ratio_m), low),
                  InvalidArgument);
}

TEST_CASE("algorithm 2 decrease inequality for several sigma") {
  const Problem p = make_problem("quad-d2");
  const double a = condition2_floor(0.01, 0.5, 4.0);
  CHECK(a == doctest::Approx(8.02));
  const double c = 0.5 * a - 0.01;
  for (double sigma : {0.0, 0.3, 1.0}) {
    for (PolicyKind kind : {PolicyKind::constant, PolicyKind::inflated}) {
      const MetricPolicy pol = MetricPolicy::scaled_identity(kind, 2, a, 0.5);
      const Trace tr = run_algorithm2(p, start2(), constant_sigma(sigma, 1.0, 0.01, 0.5, Acceptance::always), pol);
      for (std::size_t k = 0; k < tr.iterations(); ++k) {
        const double s2 = tr.records[k].s_norm * tr.records[k].s_norm;
        CHECK(tr.records[k].accepted);
        CHECK(tr.f_at(k) - tr.f_at(k + 1) >= 0.5 * c * s2 - 1e-10 * (1.0 + std::abs(tr.f_at(k))));
      }
      CHECK(tr.status == RunStatus::converged);
    }
  }
}

TEST_CASE("sigma_max = 0 gives the damped Newton step") {
  const Problem p = make_problem("lse-d2");
  const double a = condition2_floor(0.0, 0.5, *p.lipschitz_L) * 1.5;
  SolverConfig cfg = constant_sigma(0.0, 0.0, 0.0, 0.5, Acceptance::always);
  cfg.max_iters = 3;
  const Trace tr = run_algorithm2(p, p.default_start, cfg, MetricPolicy::scaled_identity(PolicyKind::constant, 2, a));
  for (std::size_t k = 0; k < tr.iterations(); ++k) {
    CHECK(tr.records[k].sigma == 0.0);
    const Vec expect = tr.iterate(k) - eval_grad(p, tr.iterate(k)) / a;
    CHECK((tr.iterate(k + 1) - expect).norm() <= 1e-14);
  }
}

TEST_CASE("runs are deterministic") {
  const Problem p = make_problem("logistic");
  SolverConfig cfg = constant_sigma(1.0, 1e4, 0.0, 0.1, Acceptance::ratio_m);
  cfg.sigma_rule.kind = SigmaRuleKind::adaptive;
  const MetricPolicy pol = MetricPolicy::scaled_identity(PolicyKind::constant, p.dim, 1.0);
  const Trace a = run_algorithm1(p, p.default_start, cfg, pol);
  const Trace b = run_algorithm1(p, p.default_start, cfg, pol);
  REQUIRE(a.iterations() == b.iterations());
  for (std::size_t k = 0; k <= a.iterations(); ++k) CHECK((a.iterate(k).array() == b.iterate(k).array()).all());
}

TEST_CASE("max_iters = 0 produces an empty trace") {
  const Problem p = make_problem("quad-d2");
  SolverConfig cfg = constant_sigma(1.0, 1.0, 0.0, 0.1, Acceptance::ratio_m);
  cfg.max_iters = 0;
  const Trace tr = run_algorithm1(p, start2(), cfg, MetricPolicy::scaled_identity(PolicyKind::constant, 2, 4.0));
  CHECK(tr.iterations() == 0);
  CHECK(tr.status == RunStatus::maxiter);
  CHECK((tr.x_final - start2()).norm() == 0.0);
}
