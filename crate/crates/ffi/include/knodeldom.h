#ifndef KNODELDOM_H
#define KNODELDOM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define KD_SIDE_U 0

#define KD_SIDE_V 1

#define KD_KIND_TOTAL 0

#define KD_KIND_DOMINATING 1

#define KD_STRATEGY_EXHAUSTIVE 0

#define KD_STRATEGY_PRUNED 1

#define KD_STRATEGY_CONSTRUCTION 2

typedef enum KdCertificate {
  KD_CERTIFICATE_BOUND_MATCHED = 0,
  KD_CERTIFICATE_EXHAUSTED = 1,
} KdCertificate;

typedef enum KdStatus {
  KD_STATUS_OK = 0,
  KD_STATUS_NULL_POINTER = 1,
  KD_STATUS_INVALID_PARAMETERS = 2,
  KD_STATUS_OUT_OF_RANGE = 3,
  KD_STATUS_CONTRACT = 4,
  KD_STATUS_OUT_OF_DOMAIN = 5,
  KD_STATUS_TOO_LARGE = 6,
  KD_STATUS_INCOMPLETE = 7,
  KD_STATUS_PARSE = 8,
  KD_STATUS_IO = 9,
  KD_STATUS_BUFFER_TOO_SMALL = 10,
  KD_STATUS_INVALID_ARGUMENT = 11,
  KD_STATUS_PANIC = 12,
} KdStatus;

// Opaque graph handle.
typedef struct KdGraph KdGraph;

// Opaque solve result handle.
typedef struct KdSolveResult KdSolveResult;

// A vertex `u_index` (side `KD_SIDE_U`) or `v_index` (side `KD_SIDE_V`); indices are 1-based.
typedef struct KdVertex {
  uint8_t side;
  size_t index;
} KdVertex;

typedef struct KdSolveOptions {
  // One of the `KD_STRATEGY_*` constants.
  uint8_t strategy;
  // One of the `KD_KIND_*` constants.
  uint8_t kind;
  // 0 uses the global thread pool.
  size_t threads;
  // 0 means unlimited.
  uint64_t max_nodes;
  bool exhaust_below_bound;
  bool override_guard;
} KdSolveOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or null. Valid until
// the next failing call on the same thread.
const char *kd_last_error_message(void);

// Library version, a static nul-terminated string.
const char *kd_version(void);

// Creates `W(delta, n)`.
//
// # Safety
// `out` must be a valid pointer to writable storage for one handle.
enum KdStatus kd_graph_new(uint32_t delta, size_t n, struct KdGraph **out);

// # Safety
// `g` must come from `kd_graph_new` and not be freed twice. Null is ignored.
void kd_graph_free(struct KdGraph *g);

// # Safety
// `g` must be a live handle or null (returns 0).
uint32_t kd_graph_delta(const struct KdGraph *g);

// # Safety
// `g` must be a live handle or null (returns 0).
size_t kd_graph_n(const struct KdGraph *g);

// # Safety
// `g` must be a live handle or null (returns 0).
size_t kd_graph_half(const struct KdGraph *g);

// # Safety
// `g` must be a live handle or null (returns 0).
size_t kd_graph_edge_count(const struct KdGraph *g);

// Neighbours of `w` in canonical order.
//
// # Safety
// `g` must be a live handle; see the module notes for `out`/`out_len`.
enum KdStatus kd_graph_neighbors(const struct KdGraph *g,
                                 struct KdVertex w,
                                 struct KdVertex *out,
                                 size_t cap,
                                 size_t *out_len);

// Cyclic index distance of two same-side vertices.
//
// # Safety
// `g` must be a live handle and `out` writable.
enum KdStatus kd_index_distance(const struct KdGraph *g,
                                struct KdVertex a,
                                struct KdVertex b,
                                size_t *out);

// # Safety
// `g` must be a live handle, `set` must hold `len` vertices, `out_holds` writable.
enum KdStatus kd_is_total_dominating(const struct KdGraph *g,
                                     const struct KdVertex *set,
                                     size_t len,
                                     bool *out_holds);

// # Safety
// `g` must be a live handle, `set` must hold `len` vertices, `out_holds` writable.
enum KdStatus kd_is_dominating(const struct KdGraph *g,
                               const struct KdVertex *set,
                               size_t len,
                               bool *out_holds);

// Total domination number of `W(3, n)` from the closed form.
//
// # Safety
// `out` must be writable.
enum KdStatus kd_gamma_t_formula(size_t n, size_t *out);

// Least possible size of one side of a total dominating set of `W(3, n)`.
//
// # Safety
// `out` must be writable.
enum KdStatus kd_side_lower_bound(size_t n, size_t *out);

// Optimal total dominating set of `W(3, n)`, canonical order.
//
// # Safety
// See the module notes for `out`/`out_len`.
enum KdStatus kd_construct_optimal_tds(size_t n, struct KdVertex *out, size_t cap, size_t *out_len);

// Defaults: pruned search, total domination, global pool, no node limit.
struct KdSolveOptions kd_solve_options_default(void);

// Exact minimum (total) dominating set. `opts` may be null for defaults.
//
// # Safety
// `g` must be a live handle, `opts` null or readable, `out` writable.
enum KdStatus kd_solve(const struct KdGraph *g,
                       const struct KdSolveOptions *opts,
                       struct KdSolveResult **out);

// # Safety
// `r` must be a live result handle or null (returns 0).
size_t kd_solve_result_optimum(const struct KdSolveResult *r);

// # Safety
// `r` must be a live result handle or null (returns 0).
uint64_t kd_solve_result_nodes_explored(const struct KdSolveResult *r);

// # Safety
// `r` must be a live result handle or null (returns 0).
uint64_t kd_solve_result_elapsed_us(const struct KdSolveResult *r);

// # Safety
// `r` must be a live result handle and `out` writable.
enum KdStatus kd_solve_result_certificate(const struct KdSolveResult *r, enum KdCertificate *out);

// The lexicographically least optimal set, canonical order.
//
// # Safety
// `r` must be a live result handle; see the module notes for `out`/`out_len`.
enum KdStatus kd_solve_result_witness(const struct KdSolveResult *r,
                                      struct KdVertex *out,
                                      size_t cap,
                                      size_t *out_len);

// # Safety
// `r` must come from `kd_solve` and not be freed twice. Null is ignored.
void kd_solve_result_free(struct KdSolveResult *r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KNODELDOM_H */
