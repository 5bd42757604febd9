#ifndef QLGHP_H
#define QLGHP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Output formats of [`qlghp_poly_render`].
typedef enum QlghpFormat {
  QLGHP_FORMAT_TEXT = 0,
  QLGHP_FORMAT_JSON = 1,
  QLGHP_FORMAT_LATEX = 2,
} QlghpFormat;

// Result codes of every fallible entry point.
typedef enum QlghpStatus {
  QLGHP_STATUS_OK = 0,
  // A required pointer argument was null.
  QLGHP_STATUS_NULL_POINTER = 1,
  // Malformed input text: rational, family expression, tag or parameters.
  QLGHP_STATUS_PARSE_ERROR = 2,
  // A vanishing q-number or other arithmetic failure.
  QLGHP_STATUS_ARITHMETIC_ERROR = 3,
  // Well-formed input outside the supported range.
  QLGHP_STATUS_INVALID_ARGUMENT = 4,
  // A string argument was not valid UTF-8.
  QLGHP_STATUS_INVALID_UTF8 = 5,
  // An internal panic was caught at the boundary.
  QLGHP_STATUS_PANIC = 6,
} QlghpStatus;

// Exact evaluation context at a fixed rational `q`.
typedef struct QlghpContext QlghpContext;

// A polynomial with rational coefficients.
typedef struct QlghpPoly QlghpPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The most recent error message on this thread, or null. The pointer stays
// valid until the next failing call on the same thread.
const char *qlghp_last_error(void);

// Library version as a static nul-terminated string.
const char *qlghp_version(void);

// Creates a context for `q` given as `"a/b"` or an integer.
//
// # Safety
// `q` is a valid nul-terminated string and `out` a valid pointer.
enum QlghpStatus qlghp_context_new(const char *q, struct QlghpContext **out);

// # Safety
// `ctx` is null or a handle from [`qlghp_context_new`] not yet freed.
void qlghp_context_free(struct QlghpContext *ctx);

// Expands a family expression such as `"LH(2,2,2)"` at the context's `q`.
//
// # Safety
// `ctx` is a live context handle, `expr` a valid nul-terminated string and
// `out` a valid pointer.
enum QlghpStatus qlghp_eval(const struct QlghpContext *ctx,
                            const char *expr,
                            struct QlghpPoly **out);

// # Safety
// `poly` is null or a handle from [`qlghp_eval`] not yet freed.
void qlghp_poly_free(struct QlghpPoly *poly);

// Number of nonzero terms; zero for a null handle.
//
// # Safety
// `poly` is null or a live polynomial handle.
size_t qlghp_poly_term_count(const struct QlghpPoly *poly);

// Whether two polynomials are equal; false if either handle is null.
//
// # Safety
// Each argument is null or a live polynomial handle.
bool qlghp_poly_equal(const struct QlghpPoly *a, const struct QlghpPoly *b);

// Renders a polynomial into a newly allocated string.
//
// # Safety
// `poly` is a live polynomial handle and `out` a valid pointer. The string
// written to `out` must be released with [`qlghp_string_free`].
enum QlghpStatus qlghp_poly_render(const struct QlghpPoly *poly,
                                   enum QlghpFormat format,
                                   char **out);

// # Safety
// `s` is null or a string returned by this library not yet freed.
void qlghp_string_free(char *s);

// Checks one instance of a catalog identity at the context's `q`, writing
// whether both sides agree to `passed`.
//
// # Safety
// `ctx` is a live context handle, `tag` and `params` valid nul-terminated
// strings and `passed` a valid pointer.
enum QlghpStatus qlghp_verify(const struct QlghpContext *ctx,
                              const char *tag,
                              const char *params,
                              bool *passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QLGHP_H */
