/* C interface of the gradelast library. Every call returns a ge_status;
 * ge_last_error() describes the most recent failure on the calling thread.
 * Strings returned through char** are released with ge_free_string. */
#ifndef GRADELAST_H
#define GRADELAST_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GE_API __declspec(dllexport)
#else
#define GE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  GE_OK = 0,
  GE_INVALID_ARGUMENT = 1,
  GE_SINGULAR_SYSTEM = 2,
  GE_FREDHOLM_INCOMPATIBLE = 3,
  GE_COERCIVITY_FAILURE = 4,
  GE_UNSUPPORTED = 5,
  GE_INTERNAL = 6,
  GE_IO = 7,
  GE_CONFIG = 8
} ge_status;

typedef struct ge_hexadic ge_hexadic;

GE_API const char* ge_status_string(ge_status status);
GE_API const char* ge_last_error(void);
GE_API void ge_free_string(char* s);

GE_API ge_status ge_set_threads(int n);

/* H for parameters a[0..4] = a1..a5 in dimension 1..3. */
GE_API ge_status ge_hexadic_create(int dim, const double a[5], ge_hexadic** out);
/* Wraps dim^6 raw components without enforcing symmetry. */
GE_API ge_status ge_hexadic_from_components(int dim, const double a[5], const double* components, size_t count,
                                            ge_hexadic** out);
GE_API void ge_hexadic_destroy(ge_hexadic* h);
GE_API ge_status ge_hexadic_dim(const ge_hexadic* h, int* dim);
/* mu = H ⋮ nu; nu and mu hold dim^3 row-major components. */
GE_API ge_status ge_hexadic_apply(const ge_hexadic* h, const double* nu, double* mu);
GE_API ge_status ge_hexadic_symmetry_defect(const ge_hexadic* h, double* defect);
/* Fails with GE_COERCIVITY_FAILURE when the form is not positive. */
GE_API ge_status ge_hexadic_coercivity(const ge_hexadic* h, uint64_t seed, double* constant);

/* Closed-form 1D displacement for a constant load f on [0, length] with u = u'' = 0 at both ends. */
GE_API ge_status ge_closed_form_1d(double f, double g, double length, double lambda, double mu, const double* x,
                                   size_t n, double* u);

/* Runs a JSON case file and writes <case_id>.csv and <case_id>_summary.json.
 * and <case_id>_solution.csv. out_dir may be NULL (config "output", else ".").
 * timing != 0 records runtimes.
 * summary receives the summary JSON when not NULL. */
GE_API ge_status ge_run_case(const char* config_path, const char* out_dir, int timing, char** summary);
GE_API ge_status ge_run_case_text(const char* config_json, const char* out_dir, int timing, char** summary);

/* Runs independent case files concurrently (ge_set_threads workers). statuses
 * and messages, when not NULL, hold count entries; messages[i] is NULL on success. */
GE_API ge_status ge_run_cases(const char* const* config_paths, size_t count, const char* out_dir, int timing,
                              ge_status* statuses, char** messages);

GE_API int ge_criterion_count(void);
/* Runs one acceptance criterion (1..11). entry receives its JSON object,
 * line a one-line report; pass is set to 0 or 1. */
GE_API ge_status ge_verify_criterion(int id, uint64_t seed, int break_h_symmetry, char** entry, char** line,
                                     int* pass);

/* Writes one SVG per norm index of a report CSV into out_dir; written
 * receives the file count and warnings a newline separated list. */
GE_API ge_status ge_plot(const char* csv_path, const char* out_dir, int* written, char** warnings);

#ifdef __cplusplus
}
#endif

#endif
