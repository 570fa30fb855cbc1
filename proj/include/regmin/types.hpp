// SPDX-FileCopyrightText: (c) 2026 regmin developers
//
// SPDX-License-Identifier: Apache-2.0

#ifndef REGMIN_TYPES_HPP
#define REGMIN_TYPES_HPP

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace regmin {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Exception hierarchy. The C API maps each class onto one status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: dimension mismatch, out-of-range parameter, unknown name.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A documented precondition of an algorithm does not hold
// (e.g. Q not positive definite, Condition 2 not satisfied).
class PreconditionViolation : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Numerical failure during a solve (non-finite values, iteration caps).
class SolverError : public Error {
 public:
  using Error::Error;
};

// Certification refused or failed (reference point outside the target set).
class CertificationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}

inline void require_dim(Eigen::Index got, Eigen::Index want, const char* what) {
  if (got != want) {
    throw InvalidArgument(std::string(what) + ": dimension mismatch (got " + std::to_string(got) +
                          ", expected " + std::to_string(want) + ")");
  }
}

}  // namespace regmin

#endif  // REGMIN_TYPES_HPP
