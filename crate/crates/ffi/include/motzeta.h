#ifndef MOTZETA_H
#define MOTZETA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MotzetaMethod {
  MOTZETA_METHOD_DIRECT = 0,
  MOTZETA_METHOD_NEWTON = 1,
  MOTZETA_METHOD_AUTO = 2,
} MotzetaMethod;

// Result of every fallible call. The nonzero codes after `NULL_POINTER`
// mirror the library's error names.
typedef enum MotzetaStatus {
  MOTZETA_STATUS_OK = 0,
  MOTZETA_STATUS_NULL_POINTER = 1,
  MOTZETA_STATUS_INVALID_UTF8 = 2,
  MOTZETA_STATUS_SYNTAX_ERROR = 3,
  MOTZETA_STATUS_CONSTANT_TERM = 4,
  MOTZETA_STATUS_ZERO_POLYNOMIAL = 5,
  MOTZETA_STATUS_DIMENSION_UNSUPPORTED = 6,
  MOTZETA_STATUS_DEGENERATE = 7,
  MOTZETA_STATUS_UNSUPPORTED_GERM = 8,
  MOTZETA_STATUS_NOT_DIVISIBLE = 9,
  MOTZETA_STATUS_INVALID_DATA = 10,
  MOTZETA_STATUS_MISSING_COVER_DATA = 11,
  MOTZETA_STATUS_UNSUPPORTED_COVER = 12,
  MOTZETA_STATUS_ORDER_MISMATCH = 13,
  MOTZETA_STATUS_IO = 14,
  MOTZETA_STATUS_PANIC = 15,
} MotzetaStatus;

// A parsed polynomial germ.
typedef struct MotzetaGerm MotzetaGerm;

// Resolution data: divisors, multiplicities and strata.
typedef struct MotzetaResolution MotzetaResolution;

// Naive and sign zeta functions truncated at a fixed order.
typedef struct MotzetaZeta MotzetaZeta;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on this thread, or null. The pointer stays
// valid until the next failing call on the same thread.
const char *motzeta_last_error_message(void);

// Static name of a status code, e.g. `"SyntaxError"`.
const char *motzeta_status_name(enum MotzetaStatus status);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void motzeta_string_free(char *s);

// Parses a germ such as `"x^2 + y^4"`. With `dim` zero the dimension is the
// number of variables used.
//
// # Safety
// `text` must be a nul-terminated string; `out` must be writable.
enum MotzetaStatus motzeta_germ_parse(const char *text, size_t dim, struct MotzetaGerm **out);

// # Safety
// `germ` must come from [`motzeta_germ_parse`] and not have been freed.
void motzeta_germ_free(struct MotzetaGerm *germ);

// # Safety
// `germ` must be a live handle.
size_t motzeta_germ_dim(const struct MotzetaGerm *germ);

// Canonical text of the germ.
//
// # Safety
// `germ` must be a live handle; `out` must be writable.
enum MotzetaStatus motzeta_germ_to_string(const struct MotzetaGerm *germ, char **out);

// # Safety
// `germ` must be a live handle; `out` must be writable.
enum MotzetaStatus motzeta_zeta_compute(const struct MotzetaGerm *germ,
                                        enum MotzetaMethod m,
                                        size_t order,
                                        struct MotzetaZeta **out);

// # Safety
// `zeta` must come from this library and not have been freed.
void motzeta_zeta_free(struct MotzetaZeta *zeta);

// 1 when the sign series are present, 0 otherwise.
//
// # Safety
// `zeta` must be a live handle.
int motzeta_zeta_has_sign_data(const struct MotzetaZeta *zeta);

// The series (and closed forms, when known) as JSON.
//
// # Safety
// `zeta` must be a live handle; `out` must be writable.
enum MotzetaStatus motzeta_zeta_to_json(const struct MotzetaZeta *zeta, char **out);

// The invariant profile as JSON.
//
// # Safety
// `zeta` must be a live handle; `out` must be writable.
enum MotzetaStatus motzeta_invariants_json(const struct MotzetaZeta *zeta, char **out);

// Compares two profiles; writes the JSON report and sets `distinguished`
// to 1 when some invariant differs.
//
// # Safety
// `a` and `b` must be live handles; `distinguished` may be null; `out` must
// be writable.
enum MotzetaStatus motzeta_compare_json(const struct MotzetaZeta *a,
                                        const struct MotzetaZeta *b,
                                        int *distinguished,
                                        char **out);

// Resolution data of a nondegenerate two-variable germ.
//
// # Safety
// `germ` must be a live handle; `out` must be writable.
enum MotzetaStatus motzeta_resolve(const struct MotzetaGerm *germ, struct MotzetaResolution **out);

// # Safety
// `json` must be a nul-terminated string; `out` must be writable.
enum MotzetaStatus motzeta_resolution_from_json(const char *json, struct MotzetaResolution **out);

// # Safety
// `res` must be a live handle; `out` must be writable.
enum MotzetaStatus motzeta_resolution_to_json(const struct MotzetaResolution *res, char **out);

// Writes the violations found as a JSON array, empty when the data is
// consistent, and their number to `count` when it is not null.
//
// # Safety
// `res` must be a live handle; `count` may be null; `out` must be writable.
enum MotzetaStatus motzeta_resolution_validate(const struct MotzetaResolution *res,
                                               size_t *count,
                                               char **out);

// Evaluates resolution data into zeta functions.
//
// # Safety
// `res` must be a live handle; `out` must be writable.
enum MotzetaStatus motzeta_resolution_zeta(const struct MotzetaResolution *res,
                                           size_t order,
                                           struct MotzetaZeta **out);

// # Safety
// `res` must come from this library and not have been freed.
void motzeta_resolution_free(struct MotzetaResolution *res);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MOTZETA_H */
