// SPDX-FileCopyrightText: (c) 2026 regmin developers
//
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "regmin/subsolver.hpp"

using namespace regmin;

namespace {

const double kRoot = (-1.0 + std::sqrt(7.0)) / 3.0;

ModelState one_d(double g, double q, double sigma, double r) {
  return ModelState::make(Vec::Zero(1), 0.0, Vec::Constant(1, g), Mat::Constant(1, 1, q), sigma, r);
}

// Brute-force oracle: dense grid on [-R, R]^n then coordinate refinement.
double grid_min(const ModelState& st, double R) {
  const int n = st.dim();
  const int N = n == 1 ? 20001 : 801;
  Vec best = Vec::Zero(n);
  double fbest = model_value(st, best);
  Vec s(n);
  if (n == 1) {
    for (int i = 0; i < N; ++i) {
      s[0] = -R + 2.0 * R * i / (N - 1);
      const double v = model_value(st, s);
      if (v < fbest) fbest = v, best = s;
    }
  } else {
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        s << -R + 2.0 * R * i / (N - 1), -R + 2.0 * R * j / (N - 1);
        const double v = model_value(st, s);
        if (v < fbest) fbest = v, best = s;
      }
  }
  double h = 2.0 * R / (N - 1);
  while (h > 1e-12) {
    bool moved = false;
    for (int i = 0; i < n; ++i)
      for (double d : {-h, h}) {
        Vec t = best;
        t[i] += d;
        const double v = model_value(st, t);
        if (v < fbest) fbest = v, best = t, moved = true;
      }
    if (!moved) h *= 0.5;
  }
  return fbest;
}

}  // namespace

TEST_CASE("secular solver, analytic 1-D case") {
  const SubsolveResult res = solve_secular(one_d(-2, 2, 3, 3));
  CHECK(res.method == SubsolveMethod::secular);
  CHECK(std::abs(res.s[0] - kRoot) <= 1e-9);
  CHECK(res.grad_norm <= 1e-12);
}

TEST_CASE("secular solver, zero gradient") {
  const SubsolveResult res = solve_secular(one_d(0, 2, 3, 3));
  CHECK(res.method == SubsolveMethod::zero);
  CHECK(res.s.norm() == 0.0);
}

TEST_CASE("secular solver with sigma = 0 is a Newton step") {
  Mat Q(2, 2);
  Q << 3, 1, 1, 2;
  Vec g(2);
  g << 1, -2;
  const ModelState st = ModelState::make(Vec::Zero(2), 0.0, g, Q, 0.0, 3.0);
  const Vec expect = -Q.ldlt().solve(g);
  CHECK((solve_secular(st).s - expect).norm() <= 1e-12 * (1.0 + expect.norm()));
}

TEST_CASE("secular solver matches a grid oracle") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 2;
    const double sigma = std::array<double, 3>{0.0, 0.5, 3.0}[trial % 3];
    const double r = std::array<double, 3>{3.0, 3.5, 4.0}[(trial / 3) % 3];
    Mat A(n, n);
    for (Eigen::Index i = 0; i < A.size(); ++i) A.data()[i] = u(rng);
    Vec g(n);
    for (int i = 0; i < n; ++i) g[i] = 2.0 * u(rng);
    const ModelState st = ModelState::make(Vec::Zero(n), 0.0, g, A * A.transpose() + 0.5 * Mat::Identity(n, n), sigma, r);
    const SubsolveResult res = solve_secular(st);
    const double R = std::max(2.0 * res.s.norm(), 1.0);
    CAPTURE(trial);
    CHECK(std::abs(model_value(st, res.s) - grid_min(st, R)) <= 1e-6);
  }
}

TEST_CASE("secular solver stays accurate for tiny sigma") {
  for (double sigma : {1e-300, 1e-312, 1e-20}) {
    const ModelState st = one_d(-1e-9, 4.0, sigma, 3.0);
    const SubsolveResult res = solve_secular(st);
    CHECK(res.s[0] == doctest::Approx(2.5e-10).epsilon(1e-9));
  }
}

TEST_CASE("secular solver rejects indefinite Q") {
  const ModelState st = ModelState::make(Vec::Zero(1), 0.0, Vec::Constant(1, 1.0), Mat::Constant(1, 1, -1.0), 1.0, 3.0);
  CHECK_THROWS_AS(solve_secular(st), PreconditionViolation);
}

TEST_CASE("descent solver") {
  const SubsolveResult zero = solve_descent(one_d(0, 2, 3, 3), 0.1);
  CHECK(zero.s.norm() == 0.0);

  const SubsolveResult res = solve_descent(one_d(-2, 2, 3, 3), 0.1);
  const double s = res.s[0];
  CHECK(res.method == SubsolveMethod::descent);
  CHECK(res.grad_norm <= 0.1 * std::abs(s) * std::min(std::abs(s), 1.0));
  CHECK(std::abs(s - kRoot) <= 0.2);
  CHECK(res.model_decrease > 0.0);

  CHECK_THROWS_AS(solve_descent(one_d(-2, 2, 3, 3), 0.0), PreconditionViolation);
  CHECK_THROWS_AS(solve_descent(one_d(-2, 2, 3, 3), 1e-14, 3), SubsolverFailure);
}

TEST_CASE("secular step norm decreases in mu") {
  const SymMatrix Q(Mat::Identity(2, 2) * 2.0);
  const Vec g = Vec::Constant(2, 1.0);
  CHECK(secular_step_norm(Q, g, 0.0) == doctest::Approx(std::sqrt(2.0) / 2.0));
  CHECK(secular_step_norm(Q, g, 2.0) == doctest::Approx(std::sqrt(2.0) / 4.0));
}
