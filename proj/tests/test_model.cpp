// SPDX-FileCopyrightText: (c) 2026 regmin developers
//
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "regmin/model.hpp"

using namespace regmin;

namespace {

// x_k = (1, 1) on f = (x1^2 + 4 x2^2) / 2, Q = 2I, sigma = 3, r = 3.
ModelState example_state() {
  Vec x(2), g(2);
  x << 1, 1;
  g << 1, 4;
  return ModelState::make(x, 2.5, g, 2.0 * Mat::Identity(2, 2), 3.0, 3.0);
}

ModelState one_d(double sigma = 3.0, double r = 3.0) {
  return ModelState::make(Vec::Zero(1), 0.0, Vec::Constant(1, -2.0), Mat::Constant(1, 1, 2.0), sigma, r);
}

Vec v2(double a, double b) {
  Vec x(2);
  x << a, b;
  return x;
}

// Independent oracle: bisection on -2 + 2s + 3s^2 over (0, 1).
double bisection_root() {
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    ((-2.0 + 2.0 * mid + 3.0 * mid * mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("model and quadratic values") {
  const ModelState st = example_state();
  CHECK(model_value(st, Vec::Zero(2)) == 2.5);
  CHECK(quadratic_value(st, Vec::Zero(2)) == 2.5);
  CHECK(model_value(st, v2(-1, 0)) == doctest::Approx(3.5).epsilon(1e-15));
  CHECK(quadratic_value(st, v2(-1, 0)) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(model_decrease(st, Vec::Zero(2)) == 0.0);
  CHECK(model_decrease(st, v2(-1, 0)) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(quadratic_decrease(st, v2(-1, 0)) == doctest::Approx(0.0));
}

TEST_CASE("model gradient") {
  const ModelState st = example_state();
  CHECK((model_gradient(st, Vec::Zero(2)) - st.g).norm() == 0.0);
  const double root = bisection_root();
  CHECK(std::abs(root - (-1.0 + std::sqrt(7.0)) / 3.0) <= 1e-12);
  CHECK(std::abs(model_gradient(one_d(), Vec::Constant(1, root))[0]) <= 1e-9);
}

TEST_CASE("model gradient matches finite differences") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n01;
  for (double r : {3.0, 3.5, 4.0}) {
    Mat A(3, 3);
    for (Eigen::Index i = 0; i < A.size(); ++i) A.data()[i] = n01(rng);
    Vec g(3), s(3);
    for (int i = 0; i < 3; ++i) {
      g[i] = n01(rng);
      s[i] = n01(rng);
    }
    const ModelState st = ModelState::make(Vec::Zero(3), 1.0, g, A * A.transpose() + Mat::Identity(3, 3), 0.7, r);
    const Vec an = model_gradient(st, s);
    const double h = 1e-6;
    for (int i = 0; i < 3; ++i) {
      Vec e = Vec::Zero(3);
      e[i] = h;
      const double fd = (model_value(st, s + e) - model_value(st, s - e)) / (2 * h);
      CHECK(fd == doctest::Approx(an[i]).epsilon(1e-6));
    }
  }
}

TEST_CASE("decrease identity and gradient embedding") {
  const double alpha = 0.25;
  Vec g(2);
  g << 1.5, -2.0;
  const ModelState st = ModelState::make(Vec::Zero(2), 3.0, g, (1.0 / alpha) * Mat::Identity(2, 2), 0.0, 3.0);
  CHECK(std::abs(model_decrease(st, -alpha * g) - 0.5 * alpha * g.squaredNorm()) <= 1e-12);

  const ModelState ex = example_state();
  const Vec s = v2(0.3, -0.2);
  CHECK(model_decrease(ex, s) == doctest::Approx(model_value(ex, Vec::Zero(2)) - model_value(ex, s)));
}

TEST_CASE("stopping rule") {
  const ModelState st = one_d();
  const ModelState flat = one_d(3.0, 3.0);
  const ModelState stationary =
      ModelState::make(flat.x, 0.0, Vec::Zero(1), Mat::Constant(1, 1, 2.0), 3.0, 3.0);
  // Both sides vanish at s = 0 when x_k is stationary.
  CHECK(stopping_satisfied(stationary, Vec::Zero(1), 0.0));
  CHECK(stopping_satisfied(stationary, Vec::Zero(1), 1.0));
  // Otherwise s = 0 leaves ||g|| > 0 on the left.
  CHECK_FALSE(stopping_satisfied(st, Vec::Zero(1), 1.0));
  // |grad m(0.5)| = 0.25 > 0.01 * 0.5 * 0.5
  CHECK(std::abs(model_gradient(st, Vec::Constant(1, 0.5))[0]) == doctest::Approx(0.25));
  CHECK_FALSE(stopping_satisfied(st, Vec::Constant(1, 0.5), 0.01));
  CHECK(stopping_satisfied(st, Vec::Constant(1, bisection_root()), 1e-6));
}

TEST_CASE("model is coercive along rays") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n01;
  const ModelState st = example_state();
  for (int trial = 0; trial < 20; ++trial) {
    Vec u(2);
    u << n01(rng), n01(rng);
    u.normalize();
    double prev = model_value(st, 5.0 * u);
    for (double t = 6.0; t < 1e4; t *= 1.5) {
      const double cur = model_value(st, t * u);
      CHECK(cur > prev);
      prev = cur;
    }
  }
}

TEST_CASE("state validation") {
  CHECK_THROWS_AS(ModelState::make(Vec::Zero(2), 0, Vec::Zero(2), Mat::Identity(2, 2), -1.0, 3.0), InvalidArgument);
  CHECK_THROWS_AS(ModelState::make(Vec::Zero(2), 0, Vec::Zero(2), Mat::Identity(2, 2), 1.0, 2.5), InvalidArgument);
  CHECK_THROWS_AS(ModelState::make(Vec::Zero(2), 0, Vec::Zero(3), Mat::Identity(2, 2), 1.0, 3.0), InvalidArgument);
  Mat asym = Mat::Identity(2, 2);
  asym(0, 1) = 1.0;
  CHECK_THROWS_AS(ModelState::make(Vec::Zero(2), 0, Vec::Zero(2), asym, 1.0, 3.0), InvalidArgument);
  CHECK(norm_power(0.0, 2.5) == 0.0);
  CHECK(norm_power(2.0, 3.0) == doctest::Approx(8.0));
}
