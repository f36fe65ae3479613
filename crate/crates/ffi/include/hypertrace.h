#ifndef HYPERTRACE_H
#define HYPERTRACE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Values match the command-line exit codes where they overlap.
 */
typedef enum HtStatus {
  HT_STATUS_OK = 0,
  HT_STATUS_INPUT_ERROR = 2,
  HT_STATUS_UNSUPPORTED = 3,
  HT_STATUS_RESOURCE_EXCEEDED = 4,
  HT_STATUS_NULL_ARGUMENT = 5,
  HT_STATUS_INTERNAL_ERROR = 6,
} HtStatus;

typedef enum HtVerdict {
  HT_VERDICT_INCONCLUSIVE = 0,
  HT_VERDICT_A_GREATER = 1,
  HT_VERDICT_B_GREATER = 2,
} HtVerdict;

/**
 * Opaque hypergraph handle.
 */
typedef struct HtHypergraph HtHypergraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parse a hypergraph from NUL-terminated JSON `{"m":…,"n":…,"edges":[…]}`.
 *
 * # Safety
 * `json` must be a valid C string; `out` must be writable.
 */
enum HtStatus ht_hypergraph_from_json(const char *json, struct HtHypergraph **out);

/**
 * Release a handle. Null is ignored.
 *
 * # Safety
 * `h` must come from `ht_hypergraph_from_json` and not be freed twice.
 */
void ht_hypergraph_free(struct HtHypergraph *h);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
size_t ht_hypergraph_vertex_count(const struct HtHypergraph *h);

/**
 * `Tr_d` from the closed forms, as `"num/den"`.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum HtStatus ht_trace(const struct HtHypergraph *h, size_t d, char **out);

/**
 * `Tr_d` by brute-force enumeration. `budget` caps the number of rooted
 * edge multisets; `max_seconds <= 0` disables the time limit.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum HtStatus ht_trace_bruteforce(const struct HtHypergraph *h,
                                  size_t d,
                                  uint64_t budget,
                                  double max_seconds,
                                  char **out);

/**
 * Certified Estrada interval as JSON with fields `lower`, `upper`,
 * `exact_lower`, `exact_upper`, `D`. `depth = 0` picks the default.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum HtStatus ht_estrada(const struct HtHypergraph *h, size_t depth, char **out);

/**
 * Certified comparison of Estrada indices. `depth = 0` picks the default.
 *
 * # Safety
 * `a`, `b` must be live handles; `verdict` must be writable.
 */
enum HtStatus ht_compare(const struct HtHypergraph *a,
                         const struct HtHypergraph *b,
                         size_t depth,
                         enum HtVerdict *verdict);

/**
 * Release a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void ht_string_free(char *s);

/**
 * Message for the most recent failure on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *ht_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYPERTRACE_H */
