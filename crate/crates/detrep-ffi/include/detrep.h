#ifndef DETREP_H
#define DETREP_H

/* Generated by cbindgen from the detrep-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status code returned by every fallible binding.
typedef enum DetrepStatus {
  // The call succeeded and out-parameters are populated.
  DETREP_STATUS_OK = 0,
  // A required pointer argument was NULL.
  DETREP_STATUS_NULL_ARGUMENT = 1,
  // An input string was not valid UTF-8.
  DETREP_STATUS_INVALID_UTF8 = 2,
  // An input failed to parse or violated a precondition.
  DETREP_STATUS_PARSE = 3,
  // A construction or certification could not be completed.
  DETREP_STATUS_VERIFY = 4,
  // An unexpected internal failure.
  DETREP_STATUS_INTERNAL = 5,
} DetrepStatus;

// Opaque handle to an exact ternary form with rational coefficients.
typedef struct DetrepForm DetrepForm;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Releases a string returned by any binding. NULL is ignored.
//
// # Safety
// `s` must be NULL or a pointer previously returned by a binding of this
// library, and must not be used afterwards.
void detrep_string_free(char *s);

// Returns a copy of the calling thread's last error message, or NULL if
// the previous call on this thread succeeded. Free it with
// `detrep_string_free`.
char *detrep_last_error_message(void);

// Parses a ternary form in the variables `x0`, `x1`, `x2` with exact
// rational coefficients (e.g. `"x0^2 - 2/3*x1*x2"`) into a new handle.
//
// # Safety
// `text` must be NULL or NUL-terminated; `out` must be a valid location
// to store the handle.
enum DetrepStatus detrep_form_parse(const char *text, struct DetrepForm **out);

// Renders a form handle back to its canonical text. Returns NULL if the
// handle is NULL. Free the result with `detrep_string_free`.
//
// # Safety
// `form` must be NULL or a live handle from `detrep_form_parse`.
char *detrep_form_render(const struct DetrepForm *form);

// Total degree of the form behind the handle; -1 if the handle is NULL.
//
// # Safety
// `form` must be NULL or a live handle from `detrep_form_parse`.
int detrep_form_degree(const struct DetrepForm *form);

// Releases a form handle. NULL is ignored.
//
// # Safety
// `form` must be NULL or a live handle from `detrep_form_parse`, and
// must not be used afterwards.
void detrep_form_free(struct DetrepForm *form);

// Classifies one sign tuple (10 characters over `{1, i}`); writes the
// classification JSON (schema `classify.schema.json`).
//
// # Safety
// `tuple` must be NULL or NUL-terminated; `out_json` must be valid.
enum DetrepStatus detrep_robinson_classify(const char *tuple, char **out_json);

// Classifies all 1024 sign tuples; writes the census JSON (schema
// `classify.schema.json`). Runs on the ambient thread pool.
//
// # Safety
// `out_json` must be a valid location to store the string.
enum DetrepStatus detrep_robinson_census(char **out_json);

// Synthesizes the determinantal representation of one sign tuple and
// writes its report JSON (schema `detrep.schema.json`).
//
// # Safety
// `tuple` must be NULL or NUL-terminated; `out_json` must be valid.
enum DetrepStatus detrep_robinson_detrep(const char *tuple, char **out_json);

// Certifies non-positivity and writes the certificate JSON (schema
// `certify.schema.json`). Pass NULL to sweep the entire generic class
// (expensive: 438 syntheses); pass a tuple to certify just that one.
// The verdict lives in the JSON field `all_not_positive`.
//
// # Safety
// `tuple` must be NULL or NUL-terminated; `out_json` must be valid.
enum DetrepStatus detrep_robinson_certify(const char *tuple, char **out_json);

// Builds the 2x2 quadratic representation from a 4x4 linear one plus
// its base points, both given as JSON (`{"matrix": [[...]]}` and
// `{"points": [[...]]}`); writes the report JSON (schema
// `quadratic.schema.json`).
//
// # Safety
// String arguments must be NULL or NUL-terminated; `out_json` must be
// valid.
enum DetrepStatus detrep_quartic_construct(const char *matrix_json,
                                           const char *octad_json,
                                           char **out_json);

// Completes a 2x2 representation of `quartic` from its entries `a00`
// and `a10` (form texts); writes the report JSON (schema
// `quadratic.schema.json`).
//
// # Safety
// String arguments must be NULL or NUL-terminated; `out_json` must be
// valid.
enum DetrepStatus detrep_quartic_dixon(const char *quartic,
                                       const char *a00,
                                       const char *a10,
                                       char **out_json);

// Evaluates a symmetric matrix of forms (JSON `{"matrix": [[...]]}`,
// entries over `mu`) at a real point and writes the definiteness report
// JSON (schema `psd.schema.json`). `eval_point` is either NULL (the
// default point `1,0,0`) or three comma-separated rationals.
//
// # Safety
// String arguments must be NULL or NUL-terminated; `out_json` must be
// valid.
enum DetrepStatus detrep_psd_check(const char *matrix_json,
                                   const char *eval_point,
                                   char **out_json);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* DETREP_H */
