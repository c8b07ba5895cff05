#ifndef FGFP_FGFP_H
#define FGFP_FGFP_H

/* FG-coupled fixed point solver: C interface.
 *
 * Handles are opaque. Every function returning fgfp_status sets a
 * thread-local message readable with fgfp_last_error() on failure.
 * Strings returned through char** must be released with fgfp_free_string().
 */

#include <stddef.h>
#include <stdint.h>

#if defined(FGFP_BUILDING_LIBRARY)
#define FGFP_API __attribute__((visibility("default")))
#else
#define FGFP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fgfp_status {
  FGFP_OK = 0,
  FGFP_ERR_INPUT = 1,            /* malformed problem or seeds, bad dimensions */
  FGFP_ERR_HYPOTHESIS = 2,       /* required hypothesis does not hold */
  FGFP_ERR_NOT_CONVERGED = 3,    /* evaluation failure outside a run */
  FGFP_ERR_INVALID_ARGUMENT = 4, /* null pointer, index out of range */
  FGFP_ERR_INTERNAL = 5
} fgfp_status;

typedef struct fgfp_problem fgfp_problem;
typedef struct fgfp_solution fgfp_solution;

typedef struct fgfp_options {
  double tol;
  size_t max_iter;
  uint64_t rng_seed;
  size_t samples_per_check;
  int force;  /* skip the hypothesis gate */
  int timing; /* add wall-clock timing to reports */
} fgfp_options;

FGFP_API void fgfp_options_init(fgfp_options* opts);

FGFP_API const char* fgfp_version(void);
FGFP_API const char* fgfp_last_error(void);
FGFP_API void fgfp_free_string(char* s);

/* source_name only labels error messages ("<source>:<line>:<col>: ..."). */
FGFP_API fgfp_status fgfp_problem_parse(const char* json, const char* source_name,
                                        fgfp_problem** out);
FGFP_API fgfp_status fgfp_problem_from_corpus(const char* id, fgfp_problem** out);
FGFP_API void fgfp_problem_free(fgfp_problem* p);
FGFP_API fgfp_status fgfp_problem_to_json(const fgfp_problem* p, char** out);

FGFP_API size_t fgfp_corpus_size(void);
/* Borrowed strings, valid for the lifetime of the library. */
FGFP_API fgfp_status fgfp_corpus_entry(size_t index, const char** id, const char** citation);

/* Commands. On FGFP_OK, *exit_code holds 0 (success), 2 (hypothesis
 * failure) or 3 (non-convergence) and *report holds the JSON report.
 * opts may be NULL for defaults. */
FGFP_API fgfp_status fgfp_check(const fgfp_problem* p, const fgfp_options* opts, int* exit_code,
                                char** report);
/* trace_csv and solution may be NULL. *solution is NULL when the hypothesis
 * gate stopped the run. */
FGFP_API fgfp_status fgfp_solve(const fgfp_problem* p, const fgfp_options* opts, int* exit_code,
                                char** report, char** trace_csv, fgfp_solution** solution);
/* seeds_json: {"seeds": [{"x0": [...], "y0": [...]}, ...]} */
FGFP_API fgfp_status fgfp_unique(const fgfp_problem* p, const char* seeds_json,
                                 const char* seeds_source, const fgfp_options* opts,
                                 int* exit_code, char** report);
FGFP_API fgfp_status fgfp_corpus_run_all(const fgfp_options* opts, int* exit_code, char** report);

FGFP_API void fgfp_solution_free(fgfp_solution* s);
FGFP_API int fgfp_solution_converged(const fgfp_solution* s);
FGFP_API size_t fgfp_solution_iterations(const fgfp_solution* s);
FGFP_API size_t fgfp_solution_dim_x(const fgfp_solution* s);
FGFP_API size_t fgfp_solution_dim_y(const fgfp_solution* s);
/* Copies min(len, dim) coordinates; returns the dimension. */
FGFP_API size_t fgfp_solution_x(const fgfp_solution* s, double* buf, size_t len);
FGFP_API size_t fgfp_solution_y(const fgfp_solution* s, double* buf, size_t len);
FGFP_API double fgfp_solution_residual_x(const fgfp_solution* s);
FGFP_API double fgfp_solution_residual_y(const fgfp_solution* s);
FGFP_API size_t fgfp_solution_bound_violations(const fgfp_solution* s);

#ifdef __cplusplus
}
#endif

#endif
