// SPDX-FileCopyrightText: (c) 2026 regmin developers
//
// SPDX-License-Identifier: Apache-2.0

#include "regmin/problems.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>
#include <sstream>

namespace regmin {

extern const char* const kBundledLogisticCsv;  // generated from data/logistic_tiny.csv

const char* to_string(ConvexityClass c) {
  switch (c) {
    case ConvexityClass::convex:
      return "convex";
    case ConvexityClass::pseudoconvex:
      return "pseudoconvex";
    case ConvexityClass::unknown:
      break;
  }
  return "unknown";
}

double eval_f(const Problem& p, const Vec& x) {
  require_dim(x.size(), p.dim, "eval_f");
  return p.f(x);
}

Vec eval_grad(const Problem& p, const Vec& x) {
  require_dim(x.size(), p.dim, "eval_grad");
  return p.grad(x);
}

double check_gradient(const Problem& p, const Vec& x, double h) {
  require(h > 0.0, "check_gradient: step must be positive");
  require(x.allFinite(), "check_gradient: x must be finite");
  const Vec g = eval_grad(p, x);
  double worst = 0.0;
  Vec probe = x;
  for (int i = 0; i < p.dim; ++i) {
    probe[i] = x[i] + h;
    const double fp = p.f(probe);
    probe[i] = x[i] - h;
    const double fm = p.f(probe);
    probe[i] = x[i];
    if (!std::isfinite(fp) || !std::isfinite(fm)) {
      throw SolverError("check_gradient: non-finite objective near x in " + p.name);
    }
    const double fd = (fp - fm) / (2.0 * h);
    worst = std::max(worst, std::abs(g[i] - fd) / std::max(1.0, std::abs(g[i])));
  }
  return worst;
}

namespace {

Vec log_spaced_spectrum(int n, double kappa) {
  Vec lambda(n);
  if (n == 1) {
    lambda[0] = kappa;
    return lambda;
  }
  for (int i = 0; i < n; ++i) {
    lambda[i] = std::pow(kappa, static_cast<double>(i) / (n - 1));
  }
  return lambda;
}

std::string format_kappa(double kappa) {
  std::ostringstream os;
  os << kappa;
  return os.str();
}

double softplus(double t) {
  // log(1 + exp(t)) without overflow
  return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

double logistic_sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

}  // namespace

Problem make_diag_quadratic(int n, double kappa) {
  require(n >= 1, "quad: dimension must be positive");
  require(kappa >= 1.0, "quad: condition number must be >= 1");
  const Vec lambda = log_spaced_spectrum(n, kappa);

  Problem p;
  p.name = (n == 2 && kappa == 4.0) ? "quad-d2" : "quad-d" + std::to_string(n) + "-k" + format_kappa(kappa);
  p.dim = n;
  p.f = [lambda](const Vec& x) { return 0.5 * (lambda.array() * x.array().square()).sum(); };
  p.grad = [lambda](const Vec& x) -> Vec { return lambda.cwiseProduct(x); };
  p.convexity = ConvexityClass::convex;
  p.minimizer = Vec::Zero(n);
  p.f_star = 0.0;
  p.lipschitz_L = lambda.maxCoeff();
  p.default_start = Vec::Ones(n);
  return p;
}

Problem make_dense_quadratic(int n, double kappa, unsigned seed) {
  require(n >= 1, "dquad: dimension must be positive");
  require(kappa >= 1.0, "dquad: condition number must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Mat gauss(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) gauss(i, j) = normal(rng);
  const Mat basis = Eigen::HouseholderQR<Mat>(gauss).householderQ();
  const Vec lambda = log_spaced_spectrum(n, kappa);
  Mat hess = basis * lambda.asDiagonal() * basis.transpose();
  hess = 0.5 * (hess + hess.transpose()).eval();
  Vec center(n);
  for (int i = 0; i < n; ++i) center[i] = normal(rng);

  Problem p;
  p.name = "dquad-d" + std::to_string(n) + "-k" + format_kappa(kappa);
  p.dim = n;
  p.f = [hess, center](const Vec& x) {
    const Vec d = x - center;
    return 0.5 * d.dot(hess * d);
  };
  p.grad = [hess, center](const Vec& x) -> Vec { return hess * (x - center); };
  p.convexity = ConvexityClass::convex;
  p.minimizer = center;
  p.f_star = 0.0;
  p.lipschitz_L = lambda.maxCoeff();
  p.default_start = Vec::Ones(n);
  return p;
}

Problem make_least_squares(int n, unsigned seed) {
  require(n >= 1, "lsq: dimension must be positive");
  const int m = 2 * n;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Mat A(m, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) A(i, j) = normal(rng);
  Vec b(m);
  for (int i = 0; i < m; ++i) b[i] = normal(rng);

  const Vec xstar = A.colPivHouseholderQr().solve(b);
  const Mat gram = A.transpose() * A;
  Eigen::SelfAdjointEigenSolver<Mat> eig(gram, Eigen::EigenvaluesOnly);

  Problem p;
  p.name = "lsq-d" + std::to_string(n);
  p.dim = n;
  p.f = [A, b](const Vec& x) { return 0.5 * (A * x - b).squaredNorm(); };
  p.grad = [A, b](const Vec& x) -> Vec { return A.transpose() * (A * x - b); };
  p.convexity = ConvexityClass::convex;
  p.minimizer = xstar;
  p.f_star = 0.5 * (A * xstar - b).squaredNorm();
  p.lipschitz_L = eig.eigenvalues().maxCoeff();
  p.default_start = Vec::Ones(n);
  return p;
}

Problem make_log_sum_exp(int n) {
  require(n >= 1, "lse: dimension must be positive");
  // Terms z = (x_1, ..., x_n, -sum x). A^T A = I + 1 1^T has norm n + 1 and
  // the softmax Jacobian has norm <= 1/2, so L = (n + 1) / 2.
  const double count = n + 1.0;
  auto terms = [n](const Vec& x) {
    Vec z(n + 1);
    z.head(n) = x;
    z[n] = -x.sum();
    return z;
  };
  Problem p;
  p.name = "lse-d" + std::to_string(n);
  p.dim = n;
  p.f = [terms, count](const Vec& x) {
    const Vec z = terms(x);
    const double zmax = z.cwiseAbs().maxCoeff();
    if (zmax <= 1.0) {
      // Accurate near the minimum, where the sum is close to count.
      double acc = 0.0;
      for (Eigen::Index i = 0; i < z.size(); ++i) acc += std::expm1(z[i]);
      return std::log1p(acc / count);
    }
    const double top = z.maxCoeff();
    return top + std::log((z.array() - top).exp().sum()) - std::log(count);
  };
  p.grad = [terms, n](const Vec& x) -> Vec {
    const Vec z = terms(x);
    const double top = z.maxCoeff();
    Vec w = (z.array() - top).exp().matrix();
    w /= w.sum();
    return w.head(n).array() - w[n];
  };
  p.convexity = ConvexityClass::convex;
  p.minimizer = Vec::Zero(n);
  p.f_star = 0.0;
  p.lipschitz_L = count / 2.0;
  p.default_start = Vec::Ones(n);
  return p;
}

std::vector<LabeledRow> bundled_logistic_data() {
  std::vector<LabeledRow> rows;
  std::istringstream in(kBundledLogisticCsv);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<double> values;
    std::istringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, ',')) values.push_back(std::stod(cell));
    if (values.size() < 2) throw IoError("bundled logistic data: malformed row '" + line + "'");
    rows.push_back({values.front(), std::vector<double>(values.begin() + 1, values.end())});
  }
  return rows;
}

Problem make_logistic(double lambda) {
  require(lambda > 0.0, "logistic: regularization must be positive");
  const auto rows = bundled_logistic_data();
  require(!rows.empty(), "logistic: empty dataset");
  const int m = static_cast<int>(rows.size());
  const int n = static_cast<int>(rows.front().features.size()) + 1;
  // Rows of Z are y_i * (1, a_i); the loss is mean softplus(-Z w).
  Mat Z(m, n);
  for (int i = 0; i < m; ++i) {
    Z(i, 0) = rows[i].label;
    for (int j = 1; j < n; ++j) Z(i, j) = rows[i].label * rows[i].features[j - 1];
  }

  auto f = [Z, lambda](const Vec& w) {
    const Vec margins = Z * w;
    double loss = 0.0;
    for (Eigen::Index i = 0; i < margins.size(); ++i) loss += softplus(-margins[i]);
    return loss / static_cast<double>(margins.size()) + 0.5 * lambda * w.squaredNorm();
  };
  auto grad = [Z, lambda](const Vec& w) -> Vec {
    const Vec margins = Z * w;
    Vec weights(margins.size());
    for (Eigen::Index i = 0; i < margins.size(); ++i) weights[i] = -logistic_sigmoid(-margins[i]);
    return Z.transpose() * weights / static_cast<double>(margins.size()) + lambda * w;
  };

  // Reference minimizer by Newton's method on the strongly convex loss.
  Vec w = Vec::Zero(n);
  for (int it = 0; it < 100; ++it) {
    const Vec g = grad(w);
    if (g.norm() <= 1e-15) break;
    const Vec margins = Z * w;
    Vec curv(m);
    for (int i = 0; i < m; ++i) {
      const double s = logistic_sigmoid(margins[i]);
      curv[i] = s * (1.0 - s);
    }
    const Mat H = Z.transpose() * curv.asDiagonal() * Z / static_cast<double>(m) +
                  lambda * Mat::Identity(n, n);
    const Vec step = H.ldlt().solve(g);
    w -= step;
    if (step.norm() <= 1e-17 * (1.0 + w.norm())) break;
  }

  Eigen::JacobiSVD<Mat> svd(Z);
  const double zn = svd.singularValues()[0];

  Problem p;
  p.name = "logistic";
  p.dim = n;
  p.f = f;
  p.grad = grad;
  p.convexity = ConvexityClass::convex;
  p.minimizer = w;
  p.minimizer_derived = true;
  p.f_star = f(w);
  p.lipschitz_L = zn * zn / (4.0 * m) + lambda;
  p.default_start = Vec::Ones(n);
  return p;
}

Problem make_ratio(int n) {
  require(n >= 1, "ratio: dimension must be positive");
  Problem p;
  p.name = "ratio-d" + std::to_string(n);
  p.dim = n;
  p.f = [](const Vec& x) {
    const double t = x.squaredNorm();
    return t / (1.0 + t);
  };
  p.grad = [](const Vec& x) -> Vec {
    const double t = x.squaredNorm();
    return (2.0 / ((1.0 + t) * (1.0 + t))) * x;
  };
  p.convexity = ConvexityClass::pseudoconvex;
  p.minimizer = Vec::Zero(n);
  p.f_star = 0.0;
  p.default_start = Vec::Ones(n);

  // The Hessian depends on x only through ||x|| (up to rotation), so a grid
  // over radii along e_1 covers R^n. Central differences of the gradient,
  // spectral norm per point, then a 10% inflation.
  double worst = 0.0;
  const double h = 1e-6;
  Mat hess(n, n);
  for (int step = 0; step <= 2000; ++step) {
    Vec x = Vec::Zero(n);
    x[0] = 0.005 * step;
    for (int j = 0; j < n; ++j) {
      Vec xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      hess.col(j) = (p.grad(xp) - p.grad(xm)) / (2.0 * h);
    }
    const Mat sym = 0.5 * (hess + hess.transpose());
    Eigen::SelfAdjointEigenSolver<Mat> eig(sym, Eigen::EigenvaluesOnly);
    worst = std::max(worst, eig.eigenvalues().cwiseAbs().maxCoeff());
  }
  p.lipschitz_L = 1.1 * worst;
  p.lipschitz_derived = true;
  return p;
}

Problem make_quartic(int n) {
  require(n >= 1, "quartic: dimension must be positive");
  Problem p;
  p.name = "quartic-d" + std::to_string(n);
  p.dim = n;
  p.f = [](const Vec& x) { return 0.25 * x.array().pow(4).sum() + 0.5 * x.squaredNorm(); };
  p.grad = [](const Vec& x) -> Vec { return (x.array().cube() + x.array()).matrix(); };
  p.convexity = ConvexityClass::convex;
  p.minimizer = Vec::Zero(n);
  p.f_star = 0.0;
  p.default_start = Vec::Ones(n);
  // Hessian diag(3 x_i^2 + 1) is unbounded: no global Lipschitz constant.
  return p;
}

namespace {

bool consume(std::string_view& s, std::string_view prefix) {
  if (s.substr(0, prefix.size()) != prefix) return false;
  s.remove_prefix(prefix.size());
  return true;
}

template <class T>
bool parse_number(std::string_view& s, T& out) {
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  if (ec != std::errc() || ptr == s.data()) return false;
  s.remove_prefix(static_cast<std::size_t>(ptr - s.data()));
  return true;
}

}  // namespace

Problem make_problem(std::string_view name) {
  const std::string original(name);
  auto fail = [&]() -> Problem { throw InvalidArgument("unknown problem '" + original + "'"); };

  if (name == "quad-d2") return make_diag_quadratic(2, 4.0);
  if (name == "logistic") return make_logistic();

  std::string_view rest = name;
  int n = 0;
  double kappa = 0.0;
  if (consume(rest, "quad-d") || consume(rest, "dquad-d")) {
    const bool dense = name.substr(0, 1) == "d";
    if (!parse_number(rest, n) || !consume(rest, "-k") || !parse_number(rest, kappa) || !rest.empty())
      return fail();
    return dense ? make_dense_quadratic(n, kappa) : make_diag_quadratic(n, kappa);
  }
  if (consume(rest, "lsq-d")) {
    if (!parse_number(rest, n) || !rest.empty()) return fail();
    return make_least_squares(n);
  }
  if (consume(rest, "lse-d")) {
    if (!parse_number(rest, n) || !rest.empty()) return fail();
    return make_log_sum_exp(n);
  }
  if (consume(rest, "ratio-d")) {
    if (!parse_number(rest, n) || !rest.empty()) return fail();
    return make_ratio(n);
  }
  if (consume(rest, "quartic-d")) {
    if (!parse_number(rest, n) || !rest.empty()) return fail();
    return make_quartic(n);
  }
  return fail();
}

std::vector<std::string> catalog_names() {
  return {"quad-d2", "quad-d10-k100", "dquad-d5-k10", "lsq-d4", "lse-d2",
          "lse-d5",  "logistic",      "ratio-d2",     "ratio-d5",
          "quartic-d3"};
}

}  // namespace regmin
