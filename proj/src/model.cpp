// SPDX-FileCopyrightText: (c) 2026 regmin developers
//
// SPDX-License-Identifier: Apache-2.0

#include "regmin/model.hpp"

#include <algorithm>
#include <cmath>

namespace regmin {

SymMatrix::SymMatrix(Mat q) : q_(std::move(q)) {
  require(q_.rows() == q_.cols() && q_.rows() > 0, "SymMatrix: matrix must be square and non-empty");
  require(q_.allFinite(), "SymMatrix: non-finite entries");
  const double scale = std::max(q_.norm(), 1e-300);
  require((q_ - q_.transpose()).norm() <= 1e-12 * scale, "SymMatrix: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> eig(q_);
  if (eig.info() != Eigen::Success) throw SolverError("SymMatrix: eigendecomposition failed");
  eigenvalues_ = eig.eigenvalues();
  eigenvectors_ = eig.eigenvectors();
}

SymMatrix SymMatrix::scaled_identity(int n, double alpha) {
  return SymMatrix(alpha * Mat::Identity(n, n));
}

SymMatrix SymMatrix::affine(double scale, double shift) const {
  SymMatrix out;
  out.q_ = scale * q_;
  out.q_.diagonal().array() += shift;
  out.eigenvalues_ = (scale * eigenvalues_.array() + shift).matrix();
  out.eigenvectors_ = eigenvectors_;
  if (scale < 0.0) {
    out.eigenvalues_.reverseInPlace();
    out.eigenvectors_ = out.eigenvectors_.rowwise().reverse().eval();
  }
  return out;
}

double SymMatrix::norm() const {
  return std::max(std::abs(min_eigenvalue()), std::abs(max_eigenvalue()));
}

ModelState ModelState::make(Vec x, double f_x, Vec g, Mat Q, double sigma, double r) {
  return make(std::move(x), f_x, std::move(g), std::make_shared<const SymMatrix>(std::move(Q)), sigma,
              r);
}

ModelState ModelState::make(Vec x, double f_x, Vec g, std::shared_ptr<const SymMatrix> Q,
                            double sigma, double r) {
  require(Q != nullptr, "ModelState: missing Q");
  require_dim(g.size(), x.size(), "ModelState gradient");
  require_dim(Q->dim(), x.size(), "ModelState Q");
  require(sigma >= 0.0 && std::isfinite(sigma), "ModelState: sigma must be finite and >= 0");
  require(r >= 3.0 && std::isfinite(r), "ModelState: r must be >= 3");
  ModelState st;
  st.x = std::move(x);
  st.f_x = f_x;
  st.g = std::move(g);
  st.Q = std::move(Q);
  st.sigma = sigma;
  st.r = r;
  return st;
}

double norm_power(double norm, double p) {
  if (norm == 0.0) return 0.0;
  return std::pow(norm, p);
}

namespace {

void check_step(const ModelState& st, const Vec& s, const char* what) {
  require_dim(s.size(), st.dim(), what);
}

double finite_or_throw(double v, const char* what) {
  if (!std::isfinite(v)) throw SolverError(std::string(what) + ": non-finite result");
  return v;
}

}  // namespace

double quadratic_value(const ModelState& st, const Vec& s) {
  check_step(st, s, "quadratic_value");
  return st.f_x + st.g.dot(s) + 0.5 * st.Q->quad_form(s);
}

double model_value(const ModelState& st, const Vec& s) {
  check_step(st, s, "model_value");
  const double reg = st.sigma / st.r * norm_power(s.norm(), st.r);
  return finite_or_throw(quadratic_value(st, s) + reg, "model_value");
}

Vec model_gradient(const ModelState& st, const Vec& s) {
  check_step(st, s, "model_gradient");
  Vec grad = st.g + st.Qm() * s;
  const double sn = s.norm();
  if (sn > 0.0 && st.sigma > 0.0) grad += st.sigma * norm_power(sn, st.r - 2.0) * s;
  return grad;
}

double quadratic_decrease(const ModelState& st, const Vec& s) {
  check_step(st, s, "quadratic_decrease");
  return -st.g.dot(s) - 0.5 * st.Q->quad_form(s);
}

double model_decrease(const ModelState& st, const Vec& s) {
  check_step(st, s, "model_decrease");
  return quadratic_decrease(st, s) - st.sigma / st.r * norm_power(s.norm(), st.r);
}

bool stopping_satisfied(const ModelState& st, const Vec& s, double tau) {
  const double sn = s.norm();
  return model_gradient(st, s).norm() <= tau * sn * std::min(sn, 1.0);
}

}  // namespace regmin
