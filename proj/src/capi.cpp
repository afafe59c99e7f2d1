#include "softcone/softcone.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "softcone/problem.hpp"

struct softcone_problem {
  softcone::Problem problem;
};

struct softcone_certificate {
  softcone::FixedPointCertificate cert;
  softcone::ContractionStatus contraction;
  softcone::InnerNorm nrm;
};

namespace {

thread_local std::string last_error;

softcone_status status_of(softcone::ErrorCode code) {
  using softcone::ErrorCode;
  switch (code) {
    case ErrorCode::MaxIterExceeded: return SOFTCONE_MAX_ITER_EXCEEDED;
    case ErrorCode::ContractionRefuted:
    case ErrorCode::FixedPointNotSharedByT: return SOFTCONE_CONTRACTION_REFUTED;
    case ErrorCode::BallPreconditionFailed:
    case ErrorCode::PreconditionFailed: return SOFTCONE_PRECONDITION_FAILED;
    case ErrorCode::D4Violated: return SOFTCONE_D4_VIOLATED;
    default: return SOFTCONE_INVALID_INPUT;
  }
}

softcone_status set_error(softcone_status s, const std::string& what) {
  last_error = what;
  return s;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs f, translating exceptions into status codes.
template <class F>
softcone_status guarded(F&& f) {
  try {
    return f();
  } catch (const softcone::Error& e) {
    return set_error(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(SOFTCONE_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return set_error(SOFTCONE_INTERNAL_ERROR, e.what());
  } catch (...) {
    return set_error(SOFTCONE_INTERNAL_ERROR, "unknown error");
  }
}

softcone_status null_arg(const char* name) {
  return set_error(SOFTCONE_INVALID_INPUT, std::string(name) + " must not be null");
}

std::string witness_line(const softcone::D4Violation& v) {
  using softcone::canonical_dump;
  using softcone::to_json;
  return "D4 violated at label " + v.label() + ": x1=" + canonical_dump(to_json(v.x1()), false) +
         " y1=" + canonical_dump(to_json(v.y1()), false) + " x2=" + canonical_dump(to_json(v.x2()), false) +
         " y2=" + canonical_dump(to_json(v.y2()), false) + "\n";
}

}  // namespace

extern "C" {

softcone_status softcone_problem_load_file(const char* path, softcone_problem** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    *out = new softcone_problem{softcone::load_problem_file(path)};
    return SOFTCONE_OK;
  });
}

softcone_status softcone_problem_load_string(const char* json, softcone_problem** out) {
  if (!json) return null_arg("json");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    *out = new softcone_problem{softcone::load_problem_string(json)};
    return SOFTCONE_OK;
  });
}

void softcone_problem_free(softcone_problem* problem) { delete problem; }

uint64_t softcone_problem_seed(const softcone_problem* problem) { return problem ? problem->problem.seed : 0; }

softcone_status softcone_problem_set_seed(softcone_problem* problem, uint64_t seed) {
  if (!problem) return null_arg("problem");
  problem->problem.seed = seed;
  return SOFTCONE_OK;
}

softcone_status softcone_problem_set_max_iter(softcone_problem* problem, uint64_t max_iter) {
  if (!problem) return null_arg("problem");
  if (max_iter == 0) return set_error(SOFTCONE_INVALID_INPUT, "max_iter must be positive");
  problem->problem.max_iter = max_iter;
  return SOFTCONE_OK;
}

int softcone_problem_max_iter_is_default(const softcone_problem* problem) {
  return problem && !problem->problem.max_iter ? 1 : 0;
}

softcone_status softcone_solve(const softcone_problem* problem, softcone_certificate** out) {
  if (!problem) return null_arg("problem");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    try {
      auto result = softcone::solve_problem(problem->problem);
      *out = new softcone_certificate{std::move(result.certificate), result.contraction, problem->problem.nrm};
      return SOFTCONE_OK;
    } catch (const softcone::SolveFailure& e) {
      const auto& partial = e.partial();
      const auto contraction = e.code() == softcone::ErrorCode::ContractionRefuted && partial.iterations == 0
                                   ? softcone::ContractionStatus::Refuted
                                   : (partial.contraction_witnessed ? softcone::ContractionStatus::Witnessed
                                                                    : softcone::ContractionStatus::Assumed);
      *out = new softcone_certificate{partial, contraction, problem->problem.nrm};
      return set_error(status_of(e.code()), e.what());
    }
  });
}

void softcone_certificate_free(softcone_certificate* cert) { delete cert; }

int softcone_certificate_converged(const softcone_certificate* cert) { return cert && cert->cert.converged ? 1 : 0; }

uint64_t softcone_certificate_iterations(const softcone_certificate* cert) {
  return cert ? static_cast<uint64_t>(cert->cert.iterations) : 0;
}

softcone_status softcone_certificate_json(const softcone_certificate* cert, char** out) {
  if (!cert) return null_arg("cert");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    *out = copy_string(softcone::canonical_dump(softcone::certificate_to_json(cert->cert, cert->contraction)));
    return SOFTCONE_OK;
  });
}

softcone_status softcone_certificate_trace_csv(const softcone_certificate* cert, softcone_trace_kind kind,
                                               char** out) {
  if (!cert) return null_arg("cert");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    std::ostringstream os;
    if (kind == SOFTCONE_TRACE_RESIDUALS)
      softcone::write_residual_csv(os, cert->cert.residuals);
    else if (kind == SOFTCONE_TRACE_MAXNORM)
      softcone::write_maxnorm_csv(os, cert->cert.residuals, cert->nrm);
    else
      return set_error(SOFTCONE_INVALID_INPUT, "unknown trace kind");
    *out = copy_string(os.str());
    return SOFTCONE_OK;
  });
}

softcone_status softcone_check_axioms(const softcone_problem* problem, uint64_t trials, uint64_t seed, char** report) {
  if (!problem) return null_arg("problem");
  if (!report) return null_arg("report");
  *report = nullptr;
  if (trials == 0) return set_error(SOFTCONE_INVALID_INPUT, "trials must be positive");
  return guarded([&] {
    const auto reports = softcone::check_axioms(softcone::require_metric(problem->problem), trials, seed);
    *report = copy_string(softcone::format_axiom_reports(reports));
    for (const auto& r : reports)
      if (!r.passed()) return set_error(SOFTCONE_AXIOM_FAILED, "axiom " + r.axiom + " failed");
    return SOFTCONE_OK;
  });
}

softcone_status softcone_slice(const softcone_problem* problem, const char* label, uint64_t seed, char** report) {
  if (!problem) return null_arg("problem");
  if (!label) return null_arg("label");
  if (!report) return null_arg("report");
  *report = nullptr;
  return guarded([&] {
    try {
      const std::string text = softcone::slice_problem(problem->problem, label, seed);
      *report = copy_string(text);
      return text.find(" FAIL ") == std::string::npos
                 ? SOFTCONE_OK
                 : set_error(SOFTCONE_AXIOM_FAILED, "crisp axioms failed for label " + std::string(label));
    } catch (const softcone::D4Violation& v) {
      *report = copy_string(witness_line(v));
      return set_error(SOFTCONE_D4_VIOLATED, v.what());
    }
  });
}

void softcone_string_free(char* s) { std::free(s); }

const char* softcone_last_error(void) { return last_error.c_str(); }

const char* softcone_status_name(softcone_status status) {
  switch (status) {
    case SOFTCONE_OK: return "ok";
    case SOFTCONE_INVALID_INPUT: return "invalid_input";
    case SOFTCONE_MAX_ITER_EXCEEDED: return "max_iter_exceeded";
    case SOFTCONE_CONTRACTION_REFUTED: return "contraction_refuted";
    case SOFTCONE_PRECONDITION_FAILED: return "precondition_failed";
    case SOFTCONE_AXIOM_FAILED: return "axiom_failed";
    case SOFTCONE_D4_VIOLATED: return "d4_violated";
    case SOFTCONE_INTERNAL_ERROR: return "internal_error";
  }
  return "unknown";
}

}  // extern "C"
