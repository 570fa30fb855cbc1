// SPDX-FileCopyrightText: (c) 2026 regmin developers
//
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <filesystem>
#include <string>

#include "regmin/regmin.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  regmin_free_string(s);
  return out;
}

}  // namespace

TEST_CASE("runspec handles") {
  regmin_runspec* spec = nullptr;
  REQUIRE(regmin_runspec_create(&spec) == REGMIN_OK);
  CHECK(regmin_runspec_set(spec, "problem", "quad-d2") == REGMIN_OK);
  CHECK(regmin_runspec_set(spec, "nope", "1") == REGMIN_E_INVALID);
  CHECK(std::string(regmin_last_error()).find("nope") != std::string::npos);
  char* v = nullptr;
  REQUIRE(regmin_runspec_get(spec, "problem", &v) == REGMIN_OK);
  CHECK(take(v) == "quad-d2");
  CHECK(regmin_runspec_key_count() > 10);
  CHECK(regmin_runspec_key(regmin_runspec_key_count()) == nullptr);
  CHECK(regmin_runspec_set(nullptr, "a", "1") == REGMIN_E_INVALID);
  regmin_runspec_destroy(spec);
}

TEST_CASE("run, save, load, certify, rate") {
  regmin_runspec* spec = nullptr;
  REQUIRE(regmin_runspec_create(&spec) == REGMIN_OK);
  regmin_runspec_set(spec, "problem", "quad-d2");
  regmin_runspec_set(spec, "algorithm", "alg2");
  regmin_runspec_set(spec, "grad_tol", "1e-12");
  regmin_trace* tr = nullptr;
  REQUIRE(regmin_run(spec, &tr) == REGMIN_OK);

  const auto dir = std::filesystem::temp_directory_path() / "regmin_test_capi";
  const std::string csv = (dir / "t.csv").string();
  REQUIRE(regmin_trace_save(tr, csv.c_str()) == REGMIN_OK);
  regmin_trace* back = nullptr;
  REQUIRE(regmin_trace_load(csv.c_str(), &back) == REGMIN_OK);

  char* json = nullptr;
  REQUIRE(regmin_trace_summary(back, &json) == REGMIN_OK);
  CHECK(take(json).find("converged") != std::string::npos);

  int passed = 0;
  REQUIRE(regmin_certify(back, nullptr, 0, -1.0, nullptr, &json, &passed) == REGMIN_OK);
  CHECK(take(json).find("min_slack") != std::string::npos);
  CHECK(passed == 1);

  const double far[2] = {3.0, 3.0};
  CHECK(regmin_certify(back, far, 2, -1.0, nullptr, &json, &passed) == REGMIN_E_CERTIFY);

  REQUIRE(regmin_rate(back, nullptr, 0, &json, &passed) == REGMIN_OK);
  take(json);
  CHECK(passed == 1);

  regmin_trace_destroy(back);
  regmin_trace_destroy(tr);
  regmin_runspec_destroy(spec);
}

TEST_CASE("error mapping") {
  regmin_runspec* spec = nullptr;
  regmin_runspec_create(&spec);
  regmin_runspec_set(spec, "problem", "quartic-d3");
  regmin_runspec_set(spec, "algorithm", "alg2");
  regmin_trace* tr = nullptr;
  CHECK(regmin_run(spec, &tr) == REGMIN_E_PRECONDITION);
  CHECK(tr == nullptr);
  CHECK(std::string(regmin_last_error()) == "Condition 2 requires L");
  regmin_runspec_destroy(spec);

  CHECK(regmin_trace_load("/nonexistent/x.csv", &tr) == REGMIN_E_IO);
}

TEST_CASE("rate refused for non-convex problems") {
  regmin_runspec* spec = nullptr;
  regmin_runspec_create(&spec);
  regmin_runspec_set(spec, "problem", "ratio-d2");
  regmin_runspec_set(spec, "algorithm", "alg2");
  regmin_trace* tr = nullptr;
  REQUIRE(regmin_run(spec, &tr) == REGMIN_OK);
  char* json = nullptr;
  int passed = 0;
  CHECK(regmin_rate(tr, nullptr, 0, &json, &passed) == REGMIN_E_CERTIFY);
  regmin_trace_destroy(tr);
  regmin_runspec_destroy(spec);
}

TEST_CASE("problem catalog") {
  CHECK(regmin_problem_count() == 10);
  CHECK(std::string(regmin_problem_name(0)) == "quad-d2");
  char* json = nullptr;
  REQUIRE(regmin_problem_describe("quartic-d3", &json) == REGMIN_OK);
  CHECK(take(json).find("\"L\":null") != std::string::npos);
  CHECK(regmin_problem_describe("bad", &json) == REGMIN_E_INVALID);
}
