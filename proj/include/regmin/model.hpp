// SPDX-FileCopyrightText: (c) 2026 regmin developers
//
// SPDX-License-Identifier: Apache-2.0

#ifndef REGMIN_MODEL_HPP
#define REGMIN_MODEL_HPP

#include <memory>

#include "regmin/types.hpp"

namespace regmin {

/// Symmetric matrix together with its eigendecomposition Q = V diag(w) V^T.
/// The factorization is computed once and shared by everyone holding it.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(Mat q);

  static SymMatrix scaled_identity(int n, double alpha);

  /// scale * Q + shift * I, reusing this eigenbasis.
  SymMatrix affine(double scale, double shift) const;

  const Mat& matrix() const { return q_; }
  const Vec& eigenvalues() const { return eigenvalues_; }  // ascending
  const Mat& eigenvectors() const { return eigenvectors_; }
  int dim() const { return static_cast<int>(q_.rows()); }

  double min_eigenvalue() const { return eigenvalues_[0]; }
  double max_eigenvalue() const { return eigenvalues_[eigenvalues_.size() - 1]; }
  /// Spectral norm ||Q||.
  double norm() const;
  /// ||v||_Q^2 = v^T Q v.
  double quad_form(const Vec& v) const { return v.dot(q_ * v); }

 private:
  Mat q_;
  Vec eigenvalues_;
  Mat eigenvectors_;
};

/// One iteration's data defining m_k(s) = f + g^T s + 1/2 s^T Q s + sigma/r ||s||^r.
struct ModelState {
  Vec x;
  double f_x = 0.0;
  Vec g;
  std::shared_ptr<const SymMatrix> Q;
  double sigma = 0.0;
  double r = 3.0;

  int dim() const { return static_cast<int>(x.size()); }
  const Mat& Qm() const { return Q->matrix(); }

  /// Builds a state and validates shapes, symmetry, sigma >= 0 and r >= 3.
  static ModelState make(Vec x, double f_x, Vec g, Mat Q, double sigma, double r);
  static ModelState make(Vec x, double f_x, Vec g, std::shared_ptr<const SymMatrix> Q, double sigma,
                         double r);
};

double model_value(const ModelState& st, const Vec& s);
double quadratic_value(const ModelState& st, const Vec& s);
Vec model_gradient(const ModelState& st, const Vec& s);

/// m_k(0) - m_k(s), evaluated term by term (no cancellation against f_x).
double model_decrease(const ModelState& st, const Vec& s);
/// q_k(0) - q_k(s).
double quadratic_decrease(const ModelState& st, const Vec& s);

/// ||grad m_k(s)|| <= tau * ||s|| * min(||s||, 1).
bool stopping_satisfied(const ModelState& st, const Vec& s, double tau);

/// ||s||^p for p > 0, with 0^p = 0.
double norm_power(double norm, double p);

}  // namespace regmin

#endif  // REGMIN_MODEL_HPP
