#ifndef RACKCOV_H
#define RACKCOV_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum RcStatus {
  RC_STATUS_OK = 0,
  RC_STATUS_NULL_POINTER = 1,
  /**
   * Malformed table, cocycle, identity or string.
   */
  RC_STATUS_INVALID_INPUT = 2,
  /**
   * A search or enumeration hit its cap.
   */
  RC_STATUS_CAP_EXCEEDED = 3,
  /**
   * The operation does not apply to this input (not a rack, not connected, ...).
   */
  RC_STATUS_PRECONDITION = 4,
  /**
   * Handles built over different bases or fibers.
   */
  RC_STATUS_MISMATCH = 5,
  RC_STATUS_PANIC = 6,
} RcStatus;

typedef enum RcVerdict {
  RC_VERDICT_NO = 0,
  RC_VERDICT_YES = 1,
  RC_VERDICT_INDETERMINATE = 2,
} RcVerdict;

/**
 * A constant cocycle together with its base.
 */
typedef struct RcCocycle RcCocycle;

/**
 * A finite left quasigroup (rack, quandle or neither).
 */
typedef struct RcQuandle RcQuandle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next library call on the same thread.
 */
const char *rc_last_error(void);

/**
 * Releases a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void rc_string_free(char *s);

/**
 * Builds a structure from a row-major `n x n` table with `table[x*n + y] = x*y`.
 *
 * # Safety
 * `table` must point to `n * n` readable values and `out` must be writable.
 */
enum RcStatus rc_quandle_from_table(size_t n, const uint32_t *table, struct RcQuandle **out);

/**
 * Parses a table in JSON (`{"size", "table"}`) or whitespace-separated text.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` writable.
 */
enum RcStatus rc_quandle_parse(const char *text, struct RcQuandle **out);

/**
 * Looks up a named structure such as `R3`, `Q4` or `Aff_7_3`.
 *
 * # Safety
 * `name` must be a nul-terminated string and `out` writable.
 */
enum RcStatus rc_quandle_fixture(const char *name, struct RcQuandle **out);

/**
 * # Safety
 * `q` must come from this library and not be freed twice. Null is ignored.
 */
void rc_quandle_free(struct RcQuandle *q);

/**
 * Number of elements, or 0 for a null handle.
 *
 * # Safety
 * `q` must be null or a live handle.
 */
size_t rc_quandle_size(const struct RcQuandle *q);

/**
 * # Safety
 * `q` must be a live handle and `out` writable.
 */
enum RcStatus rc_quandle_mul(const struct RcQuandle *q, uint32_t x, uint32_t y, uint32_t *out);

/**
 * # Safety
 * `q` must be a live handle and `out` writable.
 */
enum RcStatus rc_quandle_is_rack(const struct RcQuandle *q, bool *out);

/**
 * # Safety
 * `q` must be a live handle and `out` writable.
 */
enum RcStatus rc_quandle_is_quandle(const struct RcQuandle *q, bool *out);

/**
 * # Safety
 * `q` must be a live handle and `out` writable.
 */
enum RcStatus rc_quandle_is_connected(const struct RcQuandle *q, bool *out);

/**
 * Whether the identity (`"lhs = rhs"` or a builtin name) holds.
 *
 * # Safety
 * `q` must be a live handle, `identity` nul-terminated and `out` writable.
 */
enum RcStatus rc_quandle_satisfies(const struct RcQuandle *q, const char *identity, bool *out);

/**
 * Simple connectedness by coset enumeration with at most `cap` cosets.
 *
 * # Safety
 * `q` must be a live handle and `out` writable.
 */
enum RcStatus rc_quandle_simply_connected(const struct RcQuandle *q,
                                          size_t cap,
                                          enum RcVerdict *out);

/**
 * The structure report as a JSON string, freed with [`rc_string_free`].
 *
 * # Safety
 * `q` must be a live handle and `out` writable.
 */
enum RcStatus rc_quandle_report_json(const struct RcQuandle *q, char **out);

/**
 * Parses a cocycle file whose base is inline or a named structure.
 *
 * # Safety
 * `text` must be nul-terminated and `out` writable.
 */
enum RcStatus rc_cocycle_parse(const char *text, struct RcCocycle **out);

/**
 * # Safety
 * `c` must come from this library and not be freed twice. Null is ignored.
 */
void rc_cocycle_free(struct RcCocycle *c);

/**
 * # Safety
 * `c` must be a live handle and the out-pointers writable.
 */
enum RcStatus rc_cocycle_check(const struct RcCocycle *c, bool *rack, bool *quandle);

/**
 * The covering extension; element `(x, a)` has index `x * m + a`.
 *
 * # Safety
 * `c` must be a live handle and `out` writable.
 */
enum RcStatus rc_cocycle_extend(const struct RcCocycle *c, struct RcQuandle **out);

/**
 * Whether the extension satisfies the identity, decided on the base.
 *
 * # Safety
 * `c` must be a live handle, `identity` nul-terminated and `out` writable.
 */
enum RcStatus rc_cocycle_satisfies(const struct RcCocycle *c, const char *identity, bool *out);

/**
 * Whether two cocycles over the same base are cohomologous.
 *
 * # Safety
 * `a`, `b` must be live handles and `out` writable.
 */
enum RcStatus rc_cocycle_cohomologous(const struct RcCocycle *a,
                                      const struct RcCocycle *b,
                                      bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RACKCOV_H */
