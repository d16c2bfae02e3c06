#ifndef RAMSEY_LAB_H
#define RAMSEY_LAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RlArrowStatus {
  RL_ARROW_STATUS_SAT = 0,
  RL_ARROW_STATUS_UNSAT = 1,
  RL_ARROW_STATUS_UNKNOWN = 2,
} RlArrowStatus;

typedef enum RlColor {
  RL_COLOR_BLUE = 0,
  RL_COLOR_RED = 1,
} RlColor;

typedef enum RlKind {
  RL_KIND_PATH = 0,
  RL_KIND_CYCLE = 1,
} RlKind;

typedef enum RlPair {
  RL_PAIR_PP = 0,
  RL_PAIR_PC = 1,
  RL_PAIR_CC = 2,
} RlPair;

typedef enum RlStatus {
  RL_STATUS_OK = 0,
  RL_STATUS_NULL_POINTER = 1,
  RL_STATUS_INVALID_ARGUMENT = 2,
  RL_STATUS_HYPOTHESIS_VIOLATION = 3,
  RL_STATUS_PROOF_GAP = 4,
  RL_STATUS_MALFORMED_INPUT = 5,
  RL_STATUS_BUFFER_TOO_SMALL = 6,
  RL_STATUS_INTERNAL = 7,
  RL_STATUS_PANIC = 8,
} RlStatus;

/**
 * Opaque 2-coloring of a complete k-uniform host.
 */
typedef struct RlColoring RlColoring;

/**
 * Limits and switches for `rl_decide_arrowing`. Zero limits mean none.
 */
typedef struct RlArrowConfig {
  uint64_t max_nodes;
  double max_secs;
  uint32_t threads;
  bool symmetry;
} RlArrowConfig;

/**
 * Counters reported by `rl_decide_arrowing`.
 */
typedef struct RlArrowStats {
  uint64_t nodes;
  uint64_t propagations;
  uint64_t conflicts;
  uint64_t wall_ms;
} RlArrowStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty if none. Valid
 * until the next failing call on the same thread.
 */
const char *rl_last_error(void);

/**
 * Library version, static storage.
 */
const char *rl_version(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void rl_string_free(char *s);

/**
 * # Safety
 * `c` must be null or a handle returned by this library, not yet freed.
 */
void rl_coloring_free(struct RlColoring *c);

/**
 * One-color coloring of `K^k_N`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum RlStatus rl_coloring_uniform(uint32_t k,
                                  uint32_t n_vertices,
                                  enum RlColor c,
                                  struct RlColoring **out);

/**
 * Parses the JSON coloring format (hex bits or explicit red edges).
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be valid for writes.
 */
enum RlStatus rl_coloring_from_json(const char *json, struct RlColoring **out);

/**
 * Serializes a coloring; free the result with `rl_string_free`.
 *
 * # Safety
 * `c` must be a live handle; `out` must be valid for writes.
 */
enum RlStatus rl_coloring_to_json(const struct RlColoring *c, bool explicit_, char **out);

/**
 * # Safety
 * `c` must be a live handle; outputs must be valid for writes.
 */
enum RlStatus rl_coloring_shape(const struct RlColoring *c,
                                uint32_t *k,
                                uint32_t *n_vertices,
                                uint64_t *edges);

/**
 * # Safety
 * `c` must be a live handle; `out` must be valid for writes.
 */
enum RlStatus rl_coloring_get(const struct RlColoring *c, uint64_t rank, enum RlColor *out);

/**
 * # Safety
 * `c` must be a live handle.
 */
enum RlStatus rl_coloring_set(struct RlColoring *c, uint64_t rank, enum RlColor value);

/**
 * Verified lower-bound coloring for `R(n, m)` of the given pair kind.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum RlStatus rl_lower_bound_witness(uint32_t k,
                                     uint32_t n,
                                     uint32_t m,
                                     enum RlPair pair,
                                     struct RlColoring **out);

/**
 * Number of copies of a loose path or cycle in `K^k_N`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum RlStatus rl_count_copies(uint32_t k,
                              uint32_t n_vertices,
                              enum RlKind kind,
                              uint32_t len,
                              uint64_t *out);

/**
 * Searches for a monochromatic copy. On success `*found` tells whether one
 * exists; if so its vertex sequence is written to `assignment` (capacity
 * `cap`) and its length to `*len`.
 *
 * # Safety
 * `c` must be a live handle; `assignment` must hold `cap` values; outputs
 * must be valid for writes.
 */
enum RlStatus rl_find_embedding(const struct RlColoring *c,
                                enum RlColor value,
                                enum RlKind kind,
                                uint32_t length,
                                uint32_t *assignment,
                                size_t cap,
                                size_t *len,
                                bool *found);

/**
 * Decides `K^k_N -> (red target, blue target)`. When SAT and `witness` is
 * not null, a witness handle is written there; otherwise it is set to null.
 *
 * # Safety
 * Outputs must be valid for writes; `witness` and `stats` may be null.
 */
enum RlStatus rl_decide_arrowing(uint32_t k,
                                 uint32_t n_vertices,
                                 enum RlKind red_kind,
                                 uint32_t red_len,
                                 enum RlKind blue_kind,
                                 uint32_t blue_len,
                                 struct RlArrowConfig config,
                                 enum RlArrowStatus *status,
                                 struct RlColoring **witness,
                                 struct RlArrowStats *stats);

/**
 * DIMACS CNF text of the arrowing instance; free with `rl_string_free`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum RlStatus rl_export_dimacs(uint32_t k,
                               uint32_t n_vertices,
                               enum RlKind red_kind,
                               uint32_t red_len,
                               enum RlKind blue_kind,
                               uint32_t blue_len,
                               char **out);

/**
 * Re-validates a certificate document. `*reason` receives null when
 * accepted, otherwise a string to free with `rl_string_free`.
 *
 * # Safety
 * `json` must be a nul-terminated string; outputs must be valid for writes.
 */
enum RlStatus rl_verify_certificate(const char *json, bool *accepted, char **reason);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RAMSEY_LAB_H */
