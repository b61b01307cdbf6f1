#ifndef PALG_H
#define PALG_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  PALG_STATUS_OK = 0,
  PALG_STATUS_NULL_POINTER = 1,
  PALG_STATUS_INVALID_UTF8 = 2,
  PALG_STATUS_SYNTAX = 3,
  PALG_STATUS_INVALID_PRIME = 4,
  PALG_STATUS_INVALID_SLOT = 5,
  PALG_STATUS_DIVISION_BY_ZERO = 6,
  /**
   * The element is a zero divisor; the message carries a witness.
   */
  PALG_STATUS_NOT_INVERTIBLE = 7,
  PALG_STATUS_MISMATCH = 8,
  PALG_STATUS_PRECISION_EXHAUSTED = 9,
  /**
   * Any other mathematical failure.
   */
  PALG_STATUS_MATH_FAILURE = 10,
  /**
   * A report was produced but some verification line failed.
   */
  PALG_STATUS_CHECKS_FAILED = 11,
  PALG_STATUS_USAGE = 12,
  PALG_STATUS_PANIC = 13,
} PalgStatus;

/**
 * Opaque symbol algebra `[alpha, beta)_p`.
 */
typedef struct PalgAlgebra PalgAlgebra;

/**
 * Opaque element of a `PalgAlgebra`. Holds its own reference to the algebra.
 */
typedef struct PalgElement PalgElement;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates `[alpha, beta)_p`. `laurent_precision = 0` selects F_p(a, b);
 * a positive value selects F_p((a))((b)) with that exponent window.
 *
 * # Safety
 * `alpha` and `beta` must be NUL-terminated strings; `out` must be writable.
 */
PalgStatus palg_algebra_new(uint64_t p,
                            const char *alpha,
                            const char *beta,
                            uint32_t laurent_precision,
                            PalgAlgebra **out);

/**
 * # Safety
 * `alg` must come from `palg_algebra_new` and not have been freed, or be null.
 */
void palg_algebra_free(PalgAlgebra *alg);

/**
 * Writes `[alpha, beta)_p` as a new string.
 *
 * # Safety
 * `alg` must be a live handle; `out` must be writable.
 */
PalgStatus palg_algebra_to_string(const PalgAlgebra *alg, char **out);

/**
 * Parses an element expression in `x`, `y`, `a`, `b`.
 *
 * # Safety
 * `alg` must be a live handle, `src` a NUL-terminated string, `out` writable.
 */
PalgStatus palg_element_parse(const PalgAlgebra *alg, const char *src, PalgElement **out);

/**
 * # Safety
 * `el` must come from this library and not have been freed, or be null.
 */
void palg_element_free(PalgElement *el);

/**
 * `a + b`.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
PalgStatus palg_element_add(const PalgElement *a, const PalgElement *b, PalgElement **out);

/**
 * `a - b`.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
PalgStatus palg_element_sub(const PalgElement *a, const PalgElement *b, PalgElement **out);

/**
 * `a * b`.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
PalgStatus palg_element_mul(const PalgElement *a, const PalgElement *b, PalgElement **out);

/**
 * `a^e`.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
PalgStatus palg_element_power(const PalgElement *a, uint64_t e, PalgElement **out);

/**
 * Two-sided inverse. Returns `NotInvertible` for a zero divisor, with the
 * witness in `palg_last_error`.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
PalgStatus palg_element_inverse(const PalgElement *a, PalgElement **out);

/**
 * Sets `*out` to whether `a` and `b` are the same element of the same algebra.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
PalgStatus palg_element_equal(const PalgElement *a, const PalgElement *b, bool *out);

/**
 * Canonical printed form.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
PalgStatus palg_element_to_string(const PalgElement *a, char **out);

/**
 * # Safety
 * `s` must come from this library and not have been freed, or be null.
 */
void palg_string_free(char *s);

/**
 * Message for the last failing call on this thread. Valid until the next
 * failing call on the same thread; do not free.
 */
const char *palg_last_error(void);

/**
 * JSON report for the right-to-left linkage of `[alpha, beta)` and
 * `[gamma, beta)` over F_p(a, b). On `ChecksFailed` the report is still written.
 *
 * # Safety
 * String arguments must be NUL-terminated; `out` must be writable.
 */
PalgStatus palg_link_report_json(uint64_t p,
                                 const char *alpha,
                                 const char *beta,
                                 const char *gamma,
                                 char **out);

/**
 * JSON report of the sampled counterexample check in `[1, a)` and `[1, b)`.
 *
 * # Safety
 * `out` must be writable.
 */
PalgStatus palg_counterexample_json(uint64_t p,
                                    uint32_t precision,
                                    uint32_t samples,
                                    uint64_t seed,
                                    char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PALG_H */
