// SPDX-FileCopyrightText: (c) 2026 regmin developers
//
// SPDX-License-Identifier: Apache-2.0

#include "regmin/trace_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace regmin {

namespace fs = std::filesystem;
using nlohmann::json;

TracePaths TracePaths::from_csv(const std::string& csv_path) {
  std::string stem = csv_path;
  if (stem.size() > 4 && stem.compare(stem.size() - 4, 4, ".csv") == 0) stem.resize(stem.size() - 4);
  return {csv_path, stem + ".iterates.csv", stem + ".json"};
}

std::string format_scalar(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  const fs::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) fs::create_directories(p.parent_path(), ec);
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

// from_chars accepts subnormals, which stod rejects with ERANGE.
double parse_double(const std::string& s, const std::string& where) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw IoError(where + ": cannot parse number '" + s + "'");
  return v;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::istringstream in(read_text(path));
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

json matrix_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

json vector_json(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

}  // namespace

std::string trace_csv(const Trace& trace) {
  std::string out = kTraceHeader;
  out += '\n';
  for (const auto& r : trace.records) {
    out += std::to_string(r.k);
    for (double v : {r.f_x, r.grad_norm, r.sigma, r.s_norm, r.model_grad_norm, r.model_decrease}) {
      out += ',';
      out += format_scalar(v);
    }
    out += ',';
    if (r.rho) out += format_scalar(*r.rho);
    out += r.accepted ? ",1\n" : ",0\n";
  }
  return out;
}

json to_json(const SolverConfig& cfg) {
  return json{{"r", cfg.r},
              {"tau", cfg.tau},
              {"eta", cfg.eta},
              {"sigma_max", cfg.sigma_max},
              {"sigma_rule", to_string(cfg.sigma_rule.kind)},
              {"sigma", cfg.sigma_rule.sigma_bar},
              {"gamma_inc", cfg.sigma_rule.gamma_inc},
              {"gamma_dec", cfg.sigma_rule.gamma_dec},
              {"sigma_init", cfg.sigma_rule.sigma_init},
              {"acceptance", to_string(cfg.acceptance)},
              {"grad_tol", cfg.grad_tol},
              {"max_iters", cfg.max_iters},
              {"patience", cfg.patience},
              {"subsolver", to_string(cfg.subsolver)},
              {"secular_tol", cfg.secular_tol},
              {"max_inner", cfg.max_inner}};
}

SolverConfig config_from_json(const json& j) {
  SolverConfig cfg;
  cfg.r = j.at("r").get<double>();
  cfg.tau = j.at("tau").get<double>();
  cfg.eta = j.at("eta").get<double>();
  cfg.sigma_max = j.at("sigma_max").get<double>();
  cfg.sigma_rule.kind = sigma_rule_from_string(j.at("sigma_rule").get<std::string>());
  cfg.sigma_rule.sigma_bar = j.at("sigma").get<double>();
  cfg.sigma_rule.gamma_inc = j.at("gamma_inc").get<double>();
  cfg.sigma_rule.gamma_dec = j.at("gamma_dec").get<double>();
  cfg.sigma_rule.sigma_init = j.at("sigma_init").get<double>();
  cfg.acceptance = acceptance_from_string(j.at("acceptance").get<std::string>());
  cfg.grad_tol = j.at("grad_tol").get<double>();
  cfg.max_iters = j.at("max_iters").get<int>();
  cfg.patience = j.at("patience").get<int>();
  cfg.subsolver = subsolver_from_string(j.at("subsolver").get<std::string>());
  cfg.secular_tol = j.at("secular_tol").get<double>();
  cfg.max_inner = j.at("max_inner").get<int>();
  return cfg;
}

json to_json(const MetricPolicy& pol) {
  return json{{"kind", to_string(pol.kind)},
              {"a", pol.a},
              {"psi0", pol.psi0},
              {"shrink", pol.shrink},
              {"q0", matrix_json(pol.Q0->matrix())}};
}

MetricPolicy policy_from_json(const json& j) {
  const auto& rows = j.at("q0");
  const auto n = static_cast<Eigen::Index>(rows.size());
  Mat q0(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != n) throw IoError("policy q0 is not square");
    for (Eigen::Index jj = 0; jj < n; ++jj) q0(i, jj) = rows[i][jj].get<double>();
  }
  return MetricPolicy::make(policy_kind_from_string(j.at("kind").get<std::string>()), q0,
                            j.at("a").get<double>(), j.at("psi0").get<double>(),
                            j.at("shrink").get<double>());
}

json trace_summary(const Trace& trace) {
  return json{{"status", to_string(trace.status)},
              {"iters", trace.iterations()},
              {"f_final", trace.f_final},
              {"gnorm_final", trace.gnorm_final},
              {"f0", trace.f0},
              {"grad_tol", trace.grad_tol},
              {"problem", trace.problem},
              {"algorithm", trace.algorithm},
              {"config", to_json(trace.config)},
              {"policy", to_json(trace.policy)}};
}

void write_trace(const Trace& trace, const std::string& csv_path) {
  const TracePaths paths = TracePaths::from_csv(csv_path);
  write_text(paths.csv, trace_csv(trace));

  const std::size_t n = static_cast<std::size_t>(trace.x0.size());
  std::string it = "k";
  for (std::size_t i = 0; i < n; ++i) it += ",x_" + std::to_string(i);
  for (std::size_t i = 0; i < n; ++i) it += ",s_" + std::to_string(i);
  it += '\n';
  for (std::size_t k = 0; k <= trace.iterations(); ++k) {
    it += std::to_string(k);
    const Vec& x = trace.iterate(k);
    for (std::size_t i = 0; i < n; ++i) it += ',' + format_scalar(x[static_cast<Eigen::Index>(i)]);
    for (std::size_t i = 0; i < n; ++i) {
      it += ',';
      if (k < trace.iterations()) it += format_scalar(trace.records[k].s[static_cast<Eigen::Index>(i)]);
    }
    it += '\n';
  }
  write_text(paths.iterates, it);
  write_text(paths.summary, trace_summary(trace).dump(2) + "\n");
}

Trace read_trace(const std::string& csv_path) {
  const TracePaths paths = TracePaths::from_csv(csv_path);
  Trace tr;
  json summary;
  try {
    summary = json::parse(read_text(paths.summary));
    tr.status = run_status_from_string(summary.at("status").get<std::string>());
    tr.f_final = summary.at("f_final").get<double>();
    tr.gnorm_final = summary.at("gnorm_final").get<double>();
    tr.f0 = summary.at("f0").get<double>();
    tr.grad_tol = summary.at("grad_tol").get<double>();
    tr.problem = summary.at("problem").get<std::string>();
    tr.algorithm = summary.at("algorithm").get<std::string>();
    tr.config = config_from_json(summary.at("config"));
    tr.policy = policy_from_json(summary.at("policy"));
  } catch (const json::exception& e) {
    throw IoError(paths.summary + ": " + e.what());
  }

  const auto lines = read_lines(paths.csv);
  if (lines.empty() || lines.front() != kTraceHeader)
    throw IoError(paths.csv + ": missing or unexpected header");
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto cells = split_csv(lines[li]);
    const std::string where = paths.csv + ":" + std::to_string(li + 1);
    if (cells.size() != 9) throw IoError(where + ": expected 9 columns");
    IterationRecord r;
    r.k = static_cast<std::size_t>(parse_double(cells[0], where));
    if (r.k != li - 1) throw IoError(where + ": iteration index out of sequence");
    r.f_x = parse_double(cells[1], where);
    r.grad_norm = parse_double(cells[2], where);
    r.sigma = parse_double(cells[3], where);
    r.s_norm = parse_double(cells[4], where);
    r.model_grad_norm = parse_double(cells[5], where);
    r.model_decrease = parse_double(cells[6], where);
    if (!cells[7].empty()) r.rho = parse_double(cells[7], where);
    if (cells[8] != "0" && cells[8] != "1") throw IoError(where + ": accepted must be 0 or 1");
    r.accepted = cells[8] == "1";
    tr.records.push_back(std::move(r));
  }

  const auto it_lines = read_lines(paths.iterates);
  const std::size_t K = tr.records.size();
  if (it_lines.size() != K + 2) throw IoError(paths.iterates + ": expected " + std::to_string(K + 1) + " rows");
  const auto head = split_csv(it_lines.front());
  if (head.empty() || head.front() != "k" || (head.size() - 1) % 2 != 0)
    throw IoError(paths.iterates + ": malformed header");
  const auto n = static_cast<Eigen::Index>((head.size() - 1) / 2);
  for (std::size_t k = 0; k <= K; ++k) {
    const auto cells = split_csv(it_lines[k + 1]);
    const std::string where = paths.iterates + ":" + std::to_string(k + 2);
    if (cells.size() != static_cast<std::size_t>(2 * n + 1)) throw IoError(where + ": wrong column count");
    Vec x(n);
    for (Eigen::Index i = 0; i < n; ++i) x[i] = parse_double(cells[static_cast<std::size_t>(i + 1)], where);
    if (k < K) {
      Vec s(n);
      for (Eigen::Index i = 0; i < n; ++i) s[i] = parse_double(cells[static_cast<std::size_t>(n + i + 1)], where);
      tr.records[k].x = std::move(x);
      tr.records[k].s = std::move(s);
    } else {
      tr.x_final = std::move(x);
    }
  }
  tr.x0 = K > 0 ? tr.records.front().x : tr.x_final;
  if (tr.policy.dim() != n) throw IoError(paths.summary + ": policy dimension does not match the iterates");
  return tr;
}

void write_certificates_csv(const std::vector<FejerCertificate>& certs, const std::string& path) {
  std::string out = kCertificateHeader;
  out += '\n';
  for (const auto& c : certs) {
    out += std::to_string(c.k);
    for (double v : {c.psi, c.theta, c.eps, c.lhs, c.rhs, c.slack}) {
      out += ',';
      out += format_scalar(v);
    }
    out += '\n';
  }
  write_text(path, out);
}

std::vector<FejerCertificate> read_certificates_csv(const std::string& path) {
  const auto lines = read_lines(path);
  if (lines.empty() || lines.front() != kCertificateHeader) throw IoError(path + ": unexpected header");
  std::vector<FejerCertificate> certs;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto cells = split_csv(lines[li]);
    const std::string where = path + ":" + std::to_string(li + 1);
    if (cells.size() != 7) throw IoError(where + ": expected 7 columns");
    FejerCertificate c;
    c.k = static_cast<std::size_t>(parse_double(cells[0], where));
    c.psi = parse_double(cells[1], where);
    c.theta = parse_double(cells[2], where);
    c.eps = parse_double(cells[3], where);
    c.lhs = parse_double(cells[4], where);
    c.rhs = parse_double(cells[5], where);
    c.slack = parse_double(cells[6], where);
    certs.push_back(c);
  }
  return certs;
}

json rate_summary(const RateReport& rep) {
  return json{{"ok", rep.ok},
              {"c", rep.c},
              {"b_hat", rep.b_hat},
              {"T_hat", rep.T_hat},
              {"nu_hat", rep.nu_hat},
              {"R_hat", rep.R_hat},
              {"delta0", rep.delta0},
              {"worst_margin", rep.worst_margin},
              {"max_k_gap", rep.max_k_gap},
              {"k_gap_ok", rep.k_gap_ok}};
}

json certify_summary(const CertifyResult& res) {
  const SummabilityReport& s = res.sums;
  json out{{"R_hat", res.radius.R_hat},
           {"nu_hat", res.nu_hat},
           {"b_hat", res.b_hat},
           {"T_hat", res.T_hat},
           {"min_slack", res.min_slack},
           {"tol", res.tol},
           {"certificates_ok", res.certificates_ok},
           {"y", vector_json(res.y)},
           {"y_derived", res.y_derived},
           {"count", res.certs.size()},
           {"metrics",
            {{"floor_ok", res.metrics.floor_ok},
             {"order_ok", res.metrics.order_ok},
             {"bound_ok", res.metrics.bound_ok},
             {"zeta_hat", res.metrics.zeta_hat}}},
           {"radius",
            {{"ok", res.radius.ok},
             {"worst_margin", res.radius.worst_margin},
             {"bounded_ok", res.radius.bounded_ok},
             {"max_dist", res.radius.max_dist},
             {"literal_ok", res.radius_literal.ok},
             {"literal_R_hat", res.radius_literal.R_hat}}},
           {"sums",
            {{"accepted", s.accepted},
             {"s2", s.sum_s2},
             {"s_rm1", s.sum_s_rm1},
             {"model_grad", s.sum_model_grad},
             {"theta", s.sum_theta},
             {"eps", s.sum_eps},
             {"step_sum_bound", s.step_sum_bound},
             {"step_sum_ok", s.step_sum_ok},
             {"model_grad_ok", s.model_grad_ok},
             {"growth_s2", s.growth_s2},
             {"growth_s_rm1", s.growth_s_rm1},
             {"growth_model_grad", s.growth_model_grad}}}};
  if (res.rate) out["rate"] = rate_summary(*res.rate);
  return out;
}

}  // namespace regmin
