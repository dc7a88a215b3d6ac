#ifndef ASCOVER_H
#define ASCOVER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes of every fallible call.
 */
typedef enum AscStatus {
  ASC_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  ASC_STATUS_NULL_POINTER = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  ASC_STATUS_INVALID_UTF8 = 2,
  /**
   * Polynomial, divisor, subspace or JSON syntax error.
   */
  ASC_STATUS_PARSE = 3,
  /**
   * Well-formed input that does not describe a valid object.
   */
  ASC_STATUS_INVALID_INPUT = 4,
  /**
   * Extension degree or residue field out of the supported range.
   */
  ASC_STATUS_OUT_OF_RANGE = 5,
  /**
   * Unknown name (built-in tower or verification target).
   */
  ASC_STATUS_UNKNOWN_NAME = 6,
  /**
   * A panic inside the library; a bug.
   */
  ASC_STATUS_INTERNAL = 7,
} AscStatus;

/**
 * An Artin-Schreier tower over a base curve.
 */
typedef struct AscTower AscTower;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Reads a tower (or a bare curve) from JSON text.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum AscStatus asc_tower_from_json(const char *json, struct AscTower **out);

/**
 * One of the built-in towers, `"serre"` or `"h"`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum AscStatus asc_tower_builtin(const char *name, struct AscTower **out);

/**
 * Releases a tower; null is ignored.
 *
 * # Safety
 * `t` must come from this library and not be used afterwards.
 */
void asc_tower_free(struct AscTower *t);

/**
 * Number of covering functions in the tower.
 *
 * # Safety
 * Pointers must be valid.
 */
enum AscStatus asc_tower_num_covers(const struct AscTower *t, uint32_t *out);

/**
 * Genus of `X_R`. `subspace` uses the CLI syntax; null means everything.
 *
 * # Safety
 * Pointers must be valid; `subspace` may be null.
 */
enum AscStatus asc_genus(const struct AscTower *t, const char *subspace, uint64_t *out);

/**
 * Number of degree-1 places of `X_R` over GF(2^n), using `threads` workers
 * (0 is treated as 1).
 *
 * # Safety
 * Pointers must be valid; `subspace` may be null.
 */
enum AscStatus asc_count_points(const struct AscTower *t,
                                const char *subspace,
                                uint32_t n,
                                uint32_t threads,
                                uint64_t *out);

/**
 * Dimension of the Riemann-Roch space of a divisor on the base curve.
 *
 * # Safety
 * Pointers must be valid.
 */
enum AscStatus asc_rr_dimension(const struct AscTower *t, const char *divisor, uint64_t *out);

/**
 * Runs a verification target and returns its report as JSON in
 * `*json_out` (free with `asc_string_free`). `*passed` is 1 when every check
 * passed, else 0. A failing check is not an error.
 *
 * # Safety
 * Pointers must be valid.
 */
enum AscStatus asc_verify(const char *target, uint32_t threads, char **json_out, int *passed);

/**
 * Releases a string returned by the library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void asc_string_free(char *s);

/**
 * Message for the last failed call on this thread, empty after a success.
 * Valid until the next call into the library on the same thread.
 */
const char *asc_last_error(void);

/**
 * Library version as a static string.
 */
const char *asc_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ASCOVER_H */
