#ifndef BLADE_ARRANGEMENTS_H
#define BLADE_ARRANGEMENTS_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Node filter selector for [`ba_graph_new`].
 */
typedef enum BaFilter {
  BA_FILTER_ALL = 0,
  BA_FILTER_TWO_INTERVAL = 1,
} BaFilter;

/**
 * Membership oracle selector for [`ba_blade_contains`].
 */
typedef enum BaMethod {
  BA_METHOD_CHAIN = 0,
  BA_METHOD_MINKOWSKI = 1,
  BA_METHOD_TROPICAL = 2,
} BaMethod;

/**
 * Result code of every call.
 */
typedef enum BaStatus {
  BA_STATUS_OK = 0,
  /**
   * A required pointer was null.
   */
  BA_STATUS_NULL_POINTER = 1,
  /**
   * Malformed text input (OSP, point, UTF-8).
   */
  BA_STATUS_PARSE_ERROR = 2,
  /**
   * Input rejected by the mathematics (bad labels, wrong level, …).
   */
  BA_STATUS_DOMAIN_ERROR = 3,
  BA_STATUS_TIME_BUDGET_EXCEEDED = 4,
  /**
   * Index past the end of a handle's contents.
   */
  BA_STATUS_OUT_OF_RANGE = 5,
  /**
   * A Rust panic was caught at the boundary.
   */
  BA_STATUS_PANIC = 6,
} BaStatus;

/**
 * Opaque blade arrangement on `Δ(k,n)`.
 */
typedef struct BaArrangement BaArrangement;

/**
 * Opaque weak separation graph.
 */
typedef struct BaGraph BaGraph;

/**
 * Opaque induced subdivision.
 */
typedef struct BaSubdivision BaSubdivision;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The last error message on this thread, or null. Free with [`ba_string_free`].
 */
char *ba_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void ba_string_free(char *s);

/**
 * Weak separation of `count` subsets of size `k`, given as a flat array of
 * `count * k` labels.
 *
 * # Safety
 * `sigma` is null or holds `n` labels; `labels` holds `count * k` labels.
 */
enum BaStatus ba_is_weakly_separated(size_t n,
                                     const uint32_t *sigma,
                                     size_t k,
                                     const uint32_t *labels,
                                     size_t count,
                                     bool *out);

/**
 * The blade of the vertex `e_I` as OSP text. Free `*out` with [`ba_string_free`].
 *
 * # Safety
 * `sigma` is null or holds `n` labels; `labels` holds `len` labels.
 */
enum BaStatus ba_blade_from_vertex(size_t n,
                                   const uint32_t *sigma,
                                   const uint32_t *labels,
                                   size_t len,
                                   char **out);

/**
 * Whether the point `coords` (text such as `"1/2,1/2,0,1"`) lies on the
 * blade written in OSP notation.
 *
 * # Safety
 * `osp` and `coords` are NUL-terminated strings.
 */
enum BaStatus ba_blade_contains(const char *osp,
                                const char *coords,
                                enum BaMethod method,
                                bool *out);

/**
 * An empty arrangement on `Δ(k,n)`. Free with [`ba_arrangement_free`].
 *
 * # Safety
 * `sigma` is null or holds `n` labels.
 */
enum BaStatus ba_arrangement_new(size_t n,
                                 const uint32_t *sigma,
                                 size_t k,
                                 struct BaArrangement **out);

/**
 * Adds the translate of the blade `((σ_1 … σ_n))` to the vertex `e_I`.
 *
 * # Safety
 * `arr` is a live handle; `labels` holds `len` labels.
 */
enum BaStatus ba_arrangement_push_vertex(struct BaArrangement *arr,
                                         const uint32_t *labels,
                                         size_t len);

/**
 * Adds an explicit blade written in OSP notation.
 *
 * # Safety
 * `arr` is a live handle; `osp` is a NUL-terminated string.
 */
enum BaStatus ba_arrangement_push_osp(struct BaArrangement *arr, const char *osp);

/**
 * Number of blades in the arrangement.
 *
 * # Safety
 * `arr` is a live handle.
 */
enum BaStatus ba_arrangement_len(const struct BaArrangement *arr, size_t *out);

/**
 * # Safety
 * `arr` is null or a handle from [`ba_arrangement_new`], freed once.
 */
void ba_arrangement_free(struct BaArrangement *arr);

/**
 * The subdivision induced by the arrangement. Free with [`ba_subdivision_free`].
 *
 * # Safety
 * `arr` is a live handle.
 */
enum BaStatus ba_subdivide(const struct BaArrangement *arr, struct BaSubdivision **out);

/**
 * Number of maximal cells.
 *
 * # Safety
 * `sub` is a live handle.
 */
enum BaStatus ba_subdivision_cell_count(const struct BaSubdivision *sub, size_t *out);

/**
 * Vertices of cell `i` as bitmasks (bit `l - 1` for label `l`). Writes at
 * most `cap` masks into `buf` and the full count into `len`; pass
 * `cap = 0` to query the count.
 *
 * # Safety
 * `sub` is a live handle; `buf` has room for `cap` values.
 */
enum BaStatus ba_subdivision_cell_vertices(const struct BaSubdivision *sub,
                                           size_t i,
                                           uint64_t *buf,
                                           size_t cap,
                                           size_t *len);

/**
 * Whether cell `i` is a matroid polytope.
 *
 * # Safety
 * `sub` is a live handle.
 */
enum BaStatus ba_subdivision_cell_is_matroid(const struct BaSubdivision *sub, size_t i, bool *out);

/**
 * Whether every cell is a matroid polytope.
 *
 * # Safety
 * `sub` is a live handle.
 */
enum BaStatus ba_subdivision_is_matroidal(const struct BaSubdivision *sub, bool *out);

/**
 * The dual graph as DOT text. Free `*out` with [`ba_string_free`].
 *
 * # Safety
 * `sub` is a live handle.
 */
enum BaStatus ba_subdivision_dual_dot(const struct BaSubdivision *sub, char **out);

/**
 * # Safety
 * `sub` is null or a handle from [`ba_subdivide`], freed once.
 */
void ba_subdivision_free(struct BaSubdivision *sub);

/**
 * The weak separation graph on the nonfrozen `k`-subsets of `1..n`. Free
 * with [`ba_graph_free`].
 *
 * # Safety
 * `sigma` is null or holds `n` labels.
 */
enum BaStatus ba_graph_new(size_t k,
                           size_t n,
                           const uint32_t *sigma,
                           enum BaFilter filter,
                           struct BaGraph **out);

/**
 * Node and edge counts of the graph.
 *
 * # Safety
 * `g` is a live handle.
 */
enum BaStatus ba_graph_size(const struct BaGraph *g, size_t *nodes, size_t *edges);

/**
 * Counts maximal weakly separated collections. `threads = 0` uses every
 * core; `budget_ms = 0` means no time limit.
 *
 * # Safety
 * `g` is a live handle.
 */
enum BaStatus ba_graph_count_maximal(const struct BaGraph *g,
                                     size_t threads,
                                     uint64_t budget_ms,
                                     uint64_t *out);

/**
 * # Safety
 * `g` is null or a handle from [`ba_graph_new`], freed once.
 */
void ba_graph_free(struct BaGraph *g);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* BLADE_ARRANGEMENTS_H */
