// SPDX-FileCopyrightText: (c) 2026 regmin developers
//
// SPDX-License-Identifier: Apache-2.0

#ifndef REGMIN_PROBLEMS_HPP
#define REGMIN_PROBLEMS_HPP

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "regmin/types.hpp"

namespace regmin {

enum class ConvexityClass { convex, pseudoconvex, unknown };

const char* to_string(ConvexityClass c);

/// A smooth unconstrained test objective with analytic gradient.
///
/// Evaluators are pure; a Problem may be shared between concurrent runs.
/// `minimizer_derived` / `lipschitz_derived` mark values obtained by a
/// numerical procedure at construction time rather than in closed form.
struct Problem {
  std::string name;
  int dim = 0;
  std::function<double(const Vec&)> f;
  std::function<Vec(const Vec&)> grad;
  ConvexityClass convexity = ConvexityClass::unknown;
  std::optional<Vec> minimizer;
  std::optional<double> f_star;
  std::optional<double> lipschitz_L;
  bool minimizer_derived = false;
  bool lipschitz_derived = false;
  Vec default_start;
  // Half-width of the box [-r, r]^n used by the randomized invariant checks.
  double probe_radius = 2.0;
};

double eval_f(const Problem& p, const Vec& x);
Vec eval_grad(const Problem& p, const Vec& x);

/// Max over coordinates of |g_i - d_i| / max(1, |g_i|), where d is the
/// central difference quotient with step h.
double check_gradient(const Problem& p, const Vec& x, double h);

// Individual constructors. Names below are what make_problem() accepts.

/// "quad-d<n>-k<kappa>": 0.5 * sum_i lambda_i x_i^2 with lambda log-spaced
/// in [1, kappa]. "quad-d2" is f = 0.5 (x1^2 + 4 x2^2).
Problem make_diag_quadratic(int n, double kappa);

/// "dquad-d<n>-k<kappa>": 0.5 (x - c)^T A (x - c) with a seeded random
/// orthogonal eigenbasis and spectrum log-spaced in [1, kappa].
Problem make_dense_quadratic(int n, double kappa, unsigned seed = 7);

/// "lsq-d<n>": 0.5 ||A x - b||^2 with a seeded 2n x n matrix.
Problem make_least_squares(int n, unsigned seed = 11);

/// "lse-d<n>": log((sum_i exp(x_i) + exp(-sum_i x_i)) / (n + 1)).
/// The shift by log(n + 1) puts the minimum value at 0.
Problem make_log_sum_exp(int n);

/// "logistic": l2-regularized logistic loss on the bundled dataset, with an
/// intercept column. The minimizer is computed by Newton's method.
Problem make_logistic(double lambda = 0.1);

/// "ratio-d<n>": ||x||^2 / (1 + ||x||^2). Pseudoconvex, not convex.
Problem make_ratio(int n);

/// "quartic-d<n>": 0.25 sum_i x_i^4 + 0.5 ||x||^2. Convex; the gradient has
/// no global Lipschitz constant, so lipschitz_L is left empty.
Problem make_quartic(int n);

/// Parse a catalog name and build the instance. Throws InvalidArgument.
Problem make_problem(std::string_view name);

/// Names of the default catalog, as listed by `problems list`.
std::vector<std::string> catalog_names();

/// Rows of the bundled logistic dataset: label in {-1, +1} followed by features.
struct LabeledRow {
  double label;
  std::vector<double> features;
};
std::vector<LabeledRow> bundled_logistic_data();

}  // namespace regmin

#endif  // REGMIN_PROBLEMS_HPP
