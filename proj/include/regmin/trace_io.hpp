// SPDX-FileCopyrightText: (c) 2026 regmin developers
//
// SPDX-License-Identifier: Apache-2.0

#ifndef REGMIN_TRACE_IO_HPP
#define REGMIN_TRACE_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "regmin/driver.hpp"
#include "regmin/fejer_monitor.hpp"

namespace regmin {

// A trace on disk is three files sharing a stem:
//   <stem>.csv           k,fx,gnorm,sigma,snorm,mgradnorm,mdec,rho,accepted
//   <stem>.iterates.csv  k,x_0..x_{n-1},s_0..s_{n-1}   (rows k = 0..K; s empty on row K)
//   <stem>.json          status, iters, f_final, gnorm_final, plus the run setup
// All scalars use 17 significant digits so values round-trip exactly.
struct TracePaths {
  std::string csv;
  std::string iterates;
  std::string summary;

  static TracePaths from_csv(const std::string& csv_path);
};

inline constexpr const char* kTraceHeader = "k,fx,gnorm,sigma,snorm,mgradnorm,mdec,rho,accepted";
inline constexpr const char* kCertificateHeader = "k,psi,theta,eps,lhs,rhs,slack";

std::string format_scalar(double v);

void write_trace(const Trace& trace, const std::string& csv_path);
Trace read_trace(const std::string& csv_path);

/// Main CSV only (no sidecars); used for byte-level comparisons.
std::string trace_csv(const Trace& trace);

nlohmann::json trace_summary(const Trace& trace);
nlohmann::json to_json(const SolverConfig& cfg);
SolverConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const MetricPolicy& pol);
MetricPolicy policy_from_json(const nlohmann::json& j);

void write_certificates_csv(const std::vector<FejerCertificate>& certs, const std::string& path);
std::vector<FejerCertificate> read_certificates_csv(const std::string& path);

/// {R_hat, nu_hat, b_hat, T_hat, min_slack, sums, ...}
nlohmann::json certify_summary(const CertifyResult& res);
nlohmann::json rate_summary(const RateReport& rep);

/// Writes text to path, creating parent directories. Throws IoError.
void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace regmin

#endif  // REGMIN_TRACE_IO_HPP
