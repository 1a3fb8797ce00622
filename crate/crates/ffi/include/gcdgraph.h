#ifndef GCDGRAPH_FFI_H
#define GCDGRAPH_FFI_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GgStatus {
  GG_STATUS_OK = 0,
  GG_STATUS_INVALID_ARGUMENT = 1,
  GG_STATUS_PARSE = 2,
  GG_STATUS_CAP_EXCEEDED = 3,
  GG_STATUS_DIVISION_BY_ZERO = 4,
  GG_STATUS_INTERNAL = 5,
  GG_STATUS_NULL_POINTER = 6,
} GgStatus;

/**
 * A finite field F_q.
 */
typedef struct GgField GgField;

/**
 * A materialized gcd-graph.
 */
typedef struct GgGraph GgGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or an empty string.
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *gg_last_error(void);

/**
 * # Safety
 * `s` must come from this library, or be null.
 */
void gg_string_free(char *s);

/**
 * Creates F_q for a prime power `q`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum GgStatus gg_field_new(uint32_t q, struct GgField **out);

/**
 * # Safety
 * `field` must come from `gg_field_new`, or be null.
 */
void gg_field_free(struct GgField *field);

/**
 * Characteristic polynomial of G_f(D) in factored form, e.g. `(x - 6)*(x + 3)^2*x^6`.
 * `d` is a comma-separated list of divisors and may be empty.
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum GgStatus gg_charpoly(const struct GgField *field, const char *f, const char *d, char **out);

/**
 * Spectrum of G_f(D) as JSON.
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum GgStatus gg_spectrum_json(const struct GgField *field,
                               const char *f,
                               const char *d,
                               char **out);

/**
 * Ramanujan sum c(g, f).
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum GgStatus gg_ramanujan_sum(const struct GgField *field,
                               const char *g,
                               const char *f,
                               int64_t *out);

/**
 * Number of isospectral classes of unitary gcd-graphs for moduli of degree `n`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum GgStatus gg_unitary_class_count(uint64_t q, size_t n, uint64_t *out);

/**
 * Builds G_f(D). `max_vertices` of 0 selects the default cap.
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum GgStatus gg_graph_build(const struct GgField *field,
                             const char *f,
                             const char *d,
                             size_t max_vertices,
                             struct GgGraph **out);

/**
 * # Safety
 * `graph` must come from `gg_graph_build`, or be null.
 */
void gg_graph_free(struct GgGraph *graph);

/**
 * Vertex count, or 0 for a null handle.
 *
 * # Safety
 * `graph` must be a live handle or null.
 */
size_t gg_graph_vertex_count(const struct GgGraph *graph);

/**
 * # Safety
 * Pointers must be valid.
 */
enum GgStatus gg_graph_is_adjacent(const struct GgGraph *graph, size_t u, size_t v, bool *out);

/**
 * Edge list and labels as JSON.
 *
 * # Safety
 * Pointers must be valid.
 */
enum GgStatus gg_graph_json(const struct GgGraph *graph, char **out);

/**
 * Decides isomorphism exactly. Graphs above 256 vertices are refused.
 *
 * # Safety
 * Pointers must be valid.
 */
enum GgStatus gg_graph_is_isomorphic(const struct GgGraph *a, const struct GgGraph *b, bool *out);

/**
 * Library version as a static string.
 */
const char *gg_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GCDGRAPH_FFI_H */
