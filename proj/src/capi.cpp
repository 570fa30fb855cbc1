// SPDX-FileCopyrightText: (c) 2026 regmin developers
//
// SPDX-License-Identifier: Apache-2.0

#include "regmin/regmin.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "regmin/run_spec.hpp"
#include "regmin/suite.hpp"
#include "regmin/trace_io.hpp"

struct regmin_runspec {
  regmin::RunSpec spec;
};

struct regmin_trace {
  regmin::Trace trace;
};

namespace {

thread_local std::string last_error;

regmin_status fail(regmin_status code, const char* what) {
  last_error = what;
  return code;
}

template <class F>
regmin_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return REGMIN_OK;
  } catch (const regmin::PreconditionViolation& e) {
    return fail(REGMIN_E_PRECONDITION, e.what());
  } catch (const regmin::InvalidArgument& e) {
    return fail(REGMIN_E_INVALID, e.what());
  } catch (const regmin::CertificationError& e) {
    return fail(REGMIN_E_CERTIFY, e.what());
  } catch (const regmin::IoError& e) {
    return fail(REGMIN_E_IO, e.what());
  } catch (const regmin::SolverError& e) {
    return fail(REGMIN_E_SOLVER, e.what());
  } catch (const std::exception& e) {
    return fail(REGMIN_E_INTERNAL, e.what());
  } catch (...) {
    return fail(REGMIN_E_INTERNAL, "unknown error");
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void need(const void* p, const char* what) {
  if (!p) throw regmin::InvalidArgument(std::string(what) + " must not be NULL");
}

std::optional<regmin::Vec> point(const double* y, size_t n) {
  if (!y) return std::nullopt;
  return regmin::Vec(Eigen::Map<const regmin::Vec>(y, static_cast<Eigen::Index>(n)));
}

}  // namespace

extern "C" {

const char* regmin_version(void) { return "1.0.0"; }

const char* regmin_last_error(void) { return last_error.c_str(); }

void regmin_free_string(char* s) { std::free(s); }

regmin_status regmin_runspec_create(regmin_runspec** out) {
  return guarded([&] {
    need(out, "out");
    *out = new regmin_runspec{};
  });
}

void regmin_runspec_destroy(regmin_runspec* spec) { delete spec; }

regmin_status regmin_runspec_set(regmin_runspec* spec, const char* key, const char* value) {
  return guarded([&] {
    need(spec, "spec");
    need(key, "key");
    need(value, "value");
    spec->spec.set(key, value);
  });
}

regmin_status regmin_runspec_load(regmin_runspec* spec, const char* path) {
  return guarded([&] {
    need(spec, "spec");
    need(path, "path");
    spec->spec.load_file(path);
  });
}

regmin_status regmin_runspec_get(const regmin_runspec* spec, const char* key, char** value) {
  return guarded([&] {
    need(spec, "spec");
    need(key, "key");
    need(value, "value");
    *value = dup(spec->spec.get(key).value_or(""));
  });
}

size_t regmin_runspec_key_count(void) { return regmin::run_spec_keys().size(); }

const char* regmin_runspec_key(size_t i) {
  const auto& keys = regmin::run_spec_keys();
  return i < keys.size() ? keys[i].c_str() : nullptr;
}

regmin_status regmin_run(const regmin_runspec* spec, regmin_trace** out) {
  return guarded([&] {
    need(spec, "spec");
    need(out, "out");
    *out = nullptr;
    auto t = std::make_unique<regmin_trace>();
    t->trace = regmin::execute(spec->spec);
    *out = t.release();
  });
}

regmin_status regmin_trace_save(const regmin_trace* trace, const char* csv_path) {
  return guarded([&] {
    need(trace, "trace");
    need(csv_path, "csv_path");
    regmin::write_trace(trace->trace, csv_path);
  });
}

regmin_status regmin_trace_load(const char* csv_path, regmin_trace** out) {
  return guarded([&] {
    need(csv_path, "csv_path");
    need(out, "out");
    *out = nullptr;
    auto t = std::make_unique<regmin_trace>();
    t->trace = regmin::read_trace(csv_path);
    *out = t.release();
  });
}

void regmin_trace_destroy(regmin_trace* trace) { delete trace; }

regmin_status regmin_trace_summary(const regmin_trace* trace, char** json) {
  return guarded([&] {
    need(trace, "trace");
    need(json, "json");
    *json = dup(regmin::trace_summary(trace->trace).dump(2));
  });
}

regmin_status regmin_certify(const regmin_trace* trace, const double* y, size_t n, double tol,
                             const char* cert_csv_path, char** json, int* passed) {
  return guarded([&] {
    need(trace, "trace");
    need(json, "json");
    const regmin::Problem p = regmin::make_problem(trace->trace.problem);
    regmin::CertifyOptions opts;
    opts.y = point(y, n);
    opts.tol = tol;
    const regmin::CertifyResult res = regmin::certify(p, trace->trace, opts);
    if (cert_csv_path) regmin::write_certificates_csv(res.certs, cert_csv_path);
    *json = dup(regmin::certify_summary(res).dump(2));
    if (passed) *passed = res.certificates_ok && res.metrics.ok() ? 1 : 0;
  });
}

regmin_status regmin_rate(const regmin_trace* trace, const double* y, size_t n, char** json, int* passed) {
  return guarded([&] {
    need(trace, "trace");
    need(json, "json");
    const regmin::Problem p = regmin::make_problem(trace->trace.problem);
    if (p.convexity != regmin::ConvexityClass::convex)
      throw regmin::CertificationError("rate: " + p.name + " is not in the convex class; refused");
    if (!p.f_star) throw regmin::CertificationError("rate: " + p.name + " has no known f*; refused");
    regmin::CertifyOptions opts;
    opts.y = point(y, n);
    const regmin::CertifyResult res = regmin::certify(p, trace->trace, opts);
    *json = dup(regmin::rate_summary(*res.rate).dump(2));
    if (passed) *passed = res.rate->ok ? 1 : 0;
  });
}

regmin_status regmin_suite(const char* matrix_path, const char* out_dir, unsigned threads, char** json,
                           int* exit_code) {
  return guarded([&] {
    need(matrix_path, "matrix_path");
    need(json, "json");
    regmin::SuiteOptions opts;
    if (out_dir) opts.out_dir = out_dir;
    opts.threads = threads;
    const regmin::SuiteReport rep = regmin::run_suite(regmin::read_text(matrix_path), opts);
    *json = dup(rep.to_json().dump(2));
    if (exit_code) *exit_code = rep.exit_code();
  });
}

size_t regmin_problem_count(void) { return regmin::catalog_names().size(); }

const char* regmin_problem_name(size_t i) {
  static const std::vector<std::string> names = regmin::catalog_names();
  return i < names.size() ? names[i].c_str() : nullptr;
}

regmin_status regmin_problem_describe(const char* name, char** json) {
  return guarded([&] {
    need(name, "name");
    need(json, "json");
    const regmin::Problem p = regmin::make_problem(name);
    const char* cls = p.convexity == regmin::ConvexityClass::convex         ? "convex"
                      : p.convexity == regmin::ConvexityClass::pseudoconvex ? "pseudoconvex"
                                                                            : "unknown";
    nlohmann::json j{{"name", p.name}, {"dim", p.dim}, {"convexity", cls}};
    j["L"] = p.lipschitz_L ? nlohmann::json(*p.lipschitz_L) : nlohmann::json(nullptr);
    j["L_derived"] = p.lipschitz_derived;
    j["f_star"] = p.f_star ? nlohmann::json(*p.f_star) : nlohmann::json(nullptr);
    j["has_minimizer"] = p.minimizer.has_value();
    j["minimizer_derived"] = p.minimizer_derived;
    *json = dup(j.dump());
  });
}

}  // extern "C"
