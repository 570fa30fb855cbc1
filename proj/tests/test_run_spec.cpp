// SPDX-FileCopyrightText: (c) 2026 regmin developers
//
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "regmin/suite.hpp"

using namespace regmin;

TEST_CASE("keys accept dashes and round-trip") {
  RunSpec spec;
  spec.set("sigma-max", "3");
  spec.set("grad_tol", "1e-9");
  spec.set("x0", "1,2");
  CHECK(spec.sigma_max == 3.0);
  CHECK(spec.get("sigma_max").value() == "3");
  CHECK(spec.x0->size() == 2);
  CHECK_FALSE(spec.get("tau"));
  CHECK_THROWS_AS(spec.set("bogus", "1"), InvalidArgument);
  CHECK_THROWS_AS(spec.set("tau", "abc"), InvalidArgument);
  CHECK_THROWS_AS(spec.set("algorithm", "alg3"), InvalidArgument);

  RunSpec again;
  again.load_text("# comment\n\n" + std::string("sigma_max=3\ngrad_tol=1e-9\nx0=1,2\n"));
  CHECK(again.to_string() == spec.to_string());
}

TEST_CASE("prepare defaults") {
  RunSpec a2;
  a2.set("problem", "quad-d2");
  a2.set("algorithm", "alg2");
  a2.set("tau", "0.01");
  const PreparedRun pr = prepare(a2);
  CHECK(pr.config.acceptance == Acceptance::always);
  CHECK(pr.config.eta == 0.5);
  CHECK(pr.policy.a == doctest::Approx(8.02));

  RunSpec gd;
  gd.set("algorithm", "gradient");
  const PreparedRun g = prepare(gd);
  CHECK(g.alpha == doctest::Approx(0.25));
  gd.set("tau", "0.1");
  CHECK_THROWS_AS(prepare(gd), InvalidArgument);

  RunSpec noL;
  noL.set("problem", "quartic-d3");
  noL.set("algorithm", "alg2");
  CHECK_THROWS_WITH_AS(prepare(noL), "Condition 2 requires L", PreconditionViolation);
}

TEST_CASE("seeded starts are reproducible and in the box") {
  RunSpec s;
  s.set("problem", "ratio-d5");
  s.set("seed", "4");
  const Vec x = prepare(s).x0;
  CHECK((x.array().abs() <= 2.0).all());
  CHECK((prepare(s).x0.array() == x.array()).all());
  s.set("seed", "5");
  CHECK((prepare(s).x0 - x).norm() > 0.0);
}

TEST_CASE("suite with an invalid row and an empty matrix") {
  const SuiteReport empty = run_suite("# nothing\n\n");
  CHECK(empty.rows.empty());
  CHECK(empty.exit_code() == 0);

  const SuiteReport rep = run_suite("problem=quad-d2 algorithm=alg2 grad_tol=1e-12\nproblem=nope\n"
                                    "algorithm=gradient problem=quad-d2 grad_tol=1e-12\n");
  REQUIRE(rep.rows.size() == 3);
  CHECK(rep.rows[0].ok);
  CHECK_FALSE(rep.rows[1].ok);
  CHECK(rep.rows[1].error.find("nope") != std::string::npos);
  CHECK(rep.rows[2].ok);
  CHECK(rep.rows[2].eval.criteria.at(10).pass);
  CHECK(rep.errors == 1);
  CHECK(rep.exit_code() == 2);
}

TEST_CASE("gradient check over the catalog") {
  for (const auto& [name, err] : gradient_check_catalog(1, 5)) {
    CAPTURE(name);
    CHECK(err <= 1e-6);
  }
}
