#ifndef RATCIRC_H
#define RATCIRC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. Values 0 to 3 agree with the command line exit codes.
 */
typedef enum RcStatus {
  RC_STATUS_OK = 0,
  RC_STATUS_INCONSISTENCY = 1,
  RC_STATUS_INVALID_INPUT = 2,
  RC_STATUS_TOO_LARGE = 3,
  RC_STATUS_NULL_POINTER = 4,
  RC_STATUS_BUFFER_TOO_SMALL = 5,
  RC_STATUS_PANIC = 6,
} RcStatus;

/**
 * Opaque analysis handle.
 */
typedef struct RcAnalysis RcAnalysis;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Analyzes the circulant on `Z_n` whose connection set is the union of
 * `(Z_n)_d` over the given proper divisors.
 *
 * # Safety
 * `divisors` must point to `len` values (or be null when `len` is 0) and
 * `out` must be a valid pointer.
 */
enum RcStatus rc_analysis_from_divisors(uint64_t n,
                                        const uint64_t *divisors,
                                        size_t len,
                                        struct RcAnalysis **out);

/**
 * Analyzes `Cay(Z_n, S)` for residues reduced mod `n`. The set must be
 * loopless and closed under multiplication by units.
 *
 * # Safety
 * As for [`rc_analysis_from_divisors`].
 */
enum RcStatus rc_analysis_from_set(uint64_t n,
                                   const int64_t *residues,
                                   size_t len,
                                   struct RcAnalysis **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `h` must come from this library and must not be used afterwards.
 */
void rc_analysis_free(struct RcAnalysis *h);

/**
 * The modulus `n`, or 0 for a null handle.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
uint64_t rc_analysis_modulus(const struct RcAnalysis *h);

/**
 * Group order as a `u64`. Returns [`RcStatus::TooLarge`] when it does not
 * fit; use [`rc_analysis_order_factored`] then.
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum RcStatus rc_analysis_order_u64(const struct RcAnalysis *h, uint64_t *out);

/**
 * Prime factorization of the group order as parallel arrays of primes
 * and exponents, primes ascending.
 *
 * # Safety
 * `primes` and `exponents` must each hold `capacity` values (or be null
 * with capacity 0); `len_out` must be valid.
 */
enum RcStatus rc_analysis_order_factored(const struct RcAnalysis *h,
                                         uint64_t *primes,
                                         uint32_t *exponents,
                                         size_t capacity,
                                         size_t *len_out);

/**
 * Elements of the lattice of the generated Schur ring, ascending.
 *
 * # Safety
 * See the module documentation for the buffer convention.
 */
enum RcStatus rc_analysis_lattice(const struct RcAnalysis *h,
                                  uint64_t *buf,
                                  size_t capacity,
                                  size_t *len_out);

/**
 * Node weights of the weighted poset, in node order.
 *
 * # Safety
 * See the module documentation for the buffer convention.
 */
enum RcStatus rc_analysis_poset_weights(const struct RcAnalysis *h,
                                        uint64_t *buf,
                                        size_t capacity,
                                        size_t *len_out);

/**
 * Strict relations `i ≺ j` of the poset, flattened as pairs
 * `(i, j)` with 0-based nodes. `len_out` receives twice the number of
 * relations.
 *
 * # Safety
 * See the module documentation for the buffer convention.
 */
enum RcStatus rc_analysis_poset_relations(const struct RcAnalysis *h,
                                          size_t *buf,
                                          size_t capacity,
                                          size_t *len_out);

/**
 * Coefficients `c_i` of the map from tuples to `Z_n`.
 *
 * # Safety
 * See the module documentation for the buffer convention.
 */
enum RcStatus rc_analysis_map_coefficients(const struct RcAnalysis *h,
                                           uint64_t *buf,
                                           size_t capacity,
                                           size_t *len_out);

/**
 * Group structure such as `"S_2 ≀ S_3"`, UTF-8.
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum RcStatus rc_analysis_expression(const struct RcAnalysis *h, char **out);

/**
 * The full JSON report, as printed by `ratcirc analyze`.
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum RcStatus rc_analysis_to_json(const struct RcAnalysis *h, char **out);

/**
 * Compares the order with a brute-force search. `matches` receives 1 or 0.
 * Fails with [`RcStatus::TooLarge`] when `n > max_n`.
 *
 * # Safety
 * `h` must be a live handle and `matches` a valid pointer.
 */
enum RcStatus rc_analysis_verify(const struct RcAnalysis *h, size_t max_n, int32_t *matches);

/**
 * Number of rational circulants on `Z_n` up to isomorphism. Fails with
 * [`RcStatus::TooLarge`] when the count exceeds `u64`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum RcStatus rc_count_rational_circulants(uint64_t n, uint64_t *out);

/**
 * Whether the residues form a trace-closed set: 1, 0, or -1 on error.
 *
 * # Safety
 * `residues` must point to `len` values (or be null when `len` is 0).
 */
int32_t rc_is_rational_set(uint64_t n, const int64_t *residues, size_t len);

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next call into the library on this thread.
 */
const char *rc_last_error_message(void);

/**
 * Releases a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and must not be used afterwards.
 */
void rc_string_free(char *s);

/**
 * Library version, static storage.
 */
const char *rc_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RATCIRC_H */
