#ifndef ITDER_H
#define ITDER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes; the numeric values of the first five match the CLI exit
 * codes.
 */
typedef enum ItderStatus {
  ITDER_STATUS_OK = 0,
  ITDER_STATUS_SUITE_FAILED = 1,
  ITDER_STATUS_INVALID_INPUT = 2,
  ITDER_STATUS_DIGEST_MISMATCH = 3,
  ITDER_STATUS_FAILURE = 4,
  ITDER_STATUS_NULL_POINTER = 5,
  ITDER_STATUS_PANIC = 6,
} ItderStatus;

/**
 * Opaque derivation table over `F_2`.
 */
typedef struct ItderHd ItderHd;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread; empty after a
 * successful call. Valid until the next call into this library.
 */
const char *itder_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *itder_version(void);

/**
 * Build a table of order `order`. `choices_json` is a JSON array of
 * fraction strings in `s`, or null for all-zero choices.
 *
 * # Safety
 * `choices_json` must be null or a valid C string; `out` must be writable.
 */
enum ItderStatus itder_construct(size_t order, const char *choices_json, struct ItderHd **out);

/**
 * Load a table from its JSON file contents, checking the stored digest.
 *
 * # Safety
 * `json` must be a valid C string; `out` must be writable.
 */
enum ItderStatus itder_hd_from_json(const char *json, struct ItderHd **out);

/**
 * Serialize a table; byte-identical for identical tables.
 *
 * # Safety
 * `hd` must come from this library; `out` must be writable.
 */
enum ItderStatus itder_hd_to_json(const struct ItderHd *hd, char **out);

/**
 * Truncation order of a table, or 0 for a null handle.
 *
 * # Safety
 * `hd` must be null or come from this library.
 */
size_t itder_hd_order(const struct ItderHd *hd);

/**
 * `xi_m` for `1 <= m <= order`, rendered as text.
 *
 * # Safety
 * `hd` must come from this library; `out` must be writable.
 */
enum ItderStatus itder_hd_xi(const struct ItderHd *hd, size_t m, char **out);

/**
 * Run the comma separated `suites` and write the JSON array of reports to
 * `report_out` (may be null). Returns `ITDER_STATUS_SUITE_FAILED` when a
 * check fails.
 *
 * # Safety
 * `hd` must come from this library; `suites` must be a valid C string;
 * `report_out` must be null or writable.
 */
enum ItderStatus itder_verify(const struct ItderHd *hd,
                              const char *suites,
                              uint64_t seed,
                              char **report_out);

/**
 * Point arithmetic over GF(2^m) with neutral element `(0,0)`.
 *
 * `op` is one of `add`, `sub`, `neg`, `mul`, `on-curve`; `p` and `q` use
 * the `(x, z)`, JSON or `infinity` forms (`q` is ignored unless the
 * operation is binary) and `n` is the multiplier for `mul`. The result is
 * written as JSON. For `on-curve` the status is `ITDER_STATUS_INVALID_INPUT`
 * when the point is off the curve.
 *
 * # Safety
 * String arguments must be valid C strings (`q` may be null for unary
 * operations); `out` must be writable.
 */
enum ItderStatus itder_point_op(uint32_t m,
                                const char *op,
                                const char *p,
                                const char *q,
                                uint64_t n,
                                char **out);

/**
 * Release a handle. Null is ignored.
 *
 * # Safety
 * `hd` must be null or come from this library and not be used afterwards.
 */
void itder_hd_free(struct ItderHd *hd);

/**
 * Release a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or come from this library and not be used afterwards.
 */
void itder_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ITDER_H */
