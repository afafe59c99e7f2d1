#ifndef SOFTCONE_SOFTCONE_H
#define SOFTCONE_SOFTCONE_H

/* C interface to the softcone library. All handles are opaque. Functions
 * returning softcone_status leave a diagnostic in softcone_last_error() on
 * failure. Strings returned through char** must be released with
 * softcone_string_free. */

#include <stdint.h>

#if defined(_WIN32)
#  if defined(SOFTCONE_BUILDING)
#    define SOFTCONE_API __declspec(dllexport)
#  else
#    define SOFTCONE_API __declspec(dllimport)
#  endif
#else
#  define SOFTCONE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values double as CLI exit codes. */
typedef enum softcone_status {
  SOFTCONE_OK = 0,
  SOFTCONE_INVALID_INPUT = 1,         /* schema, IO or validation error */
  SOFTCONE_MAX_ITER_EXCEEDED = 2,
  SOFTCONE_CONTRACTION_REFUTED = 3,   /* includes T x* != x* for the power family */
  SOFTCONE_PRECONDITION_FAILED = 4,
  SOFTCONE_AXIOM_FAILED = 5,
  SOFTCONE_D4_VIOLATED = 6,
  SOFTCONE_INTERNAL_ERROR = 7
} softcone_status;

typedef enum softcone_trace_kind {
  SOFTCONE_TRACE_RESIDUALS = 0, /* n,label,coordinate,residual_value */
  SOFTCONE_TRACE_MAXNORM = 1    /* n,residual_maxnorm */
} softcone_trace_kind;

typedef struct softcone_problem softcone_problem;
typedef struct softcone_certificate softcone_certificate;

SOFTCONE_API softcone_status softcone_problem_load_file(const char* path, softcone_problem** out);
SOFTCONE_API softcone_status softcone_problem_load_string(const char* json, softcone_problem** out);
SOFTCONE_API void softcone_problem_free(softcone_problem* problem);

/* Seed from the problem file (0 when absent) unless overridden. */
SOFTCONE_API uint64_t softcone_problem_seed(const softcone_problem* problem);
SOFTCONE_API softcone_status softcone_problem_set_seed(softcone_problem* problem, uint64_t seed);
/* max_iter must be positive. */
SOFTCONE_API softcone_status softcone_problem_set_max_iter(softcone_problem* problem, uint64_t max_iter);
/* 1 if the problem file gave no max_iter. */
SOFTCONE_API int softcone_problem_max_iter_is_default(const softcone_problem* problem);

/* On SOFTCONE_MAX_ITER_EXCEEDED, SOFTCONE_CONTRACTION_REFUTED and
 * SOFTCONE_PRECONDITION_FAILED *out holds the partial certificate; otherwise
 * it is NULL unless the call succeeded. */
SOFTCONE_API softcone_status softcone_solve(const softcone_problem* problem, softcone_certificate** out);
SOFTCONE_API void softcone_certificate_free(softcone_certificate* cert);
SOFTCONE_API int softcone_certificate_converged(const softcone_certificate* cert);
SOFTCONE_API uint64_t softcone_certificate_iterations(const softcone_certificate* cert);
SOFTCONE_API softcone_status softcone_certificate_json(const softcone_certificate* cert, char** out);
SOFTCONE_API softcone_status softcone_certificate_trace_csv(const softcone_certificate* cert, softcone_trace_kind kind,
                                                            char** out);

/* Report text is set whenever the checks ran, including on
 * SOFTCONE_AXIOM_FAILED and SOFTCONE_D4_VIOLATED. */
SOFTCONE_API softcone_status softcone_check_axioms(const softcone_problem* problem, uint64_t trials, uint64_t seed,
                                                   char** report);
SOFTCONE_API softcone_status softcone_slice(const softcone_problem* problem, const char* label, uint64_t seed,
                                            char** report);

SOFTCONE_API void softcone_string_free(char* s);
/* Thread-local; valid until the next failing call on the same thread. */
SOFTCONE_API const char* softcone_last_error(void);
SOFTCONE_API const char* softcone_status_name(softcone_status status);

#ifdef __cplusplus
}
#endif

#endif
