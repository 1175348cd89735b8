#ifndef GRAPHCAP_H
#define GRAPHCAP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GraphcapStatus {
  GRAPHCAP_STATUS_OK = 0,
  GRAPHCAP_STATUS_NULL_POINTER = 1,
  GRAPHCAP_STATUS_INVALID_ARGUMENT = 2,
  GRAPHCAP_STATUS_FORMAT = 3,
  GRAPHCAP_STATUS_BUDGET = 4,
  GRAPHCAP_STATUS_CONVERGENCE = 5,
  GRAPHCAP_STATUS_BUFFER_TOO_SMALL = 6,
  GRAPHCAP_STATUS_IO = 7,
  GRAPHCAP_STATUS_PANIC = 8,
} GraphcapStatus;

/**
 * Opaque graph handle.
 */
typedef struct GraphcapGraph GraphcapGraph;

typedef struct GraphcapTheta {
  double value;
  double lower_cert;
  double upper_cert;
  double gap;
  size_t iterations;
} GraphcapTheta;

typedef struct GraphcapInterval {
  double lower;
  double upper;
  /**
   * Power whose stable set number gave the lower end.
   */
  uint32_t k;
  size_t alpha;
} GraphcapInterval;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next call into the library on this thread.
 */
const char *graphcap_last_error(void);

/**
 * Builds a graph from a generator spec such as `c5`, `k7`, `e3`,
 * `petersen`, `kneser:5,2` or `schlafli`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string; `out` must be writable.
 */
enum GraphcapStatus graphcap_graph_generate(const char *spec, struct GraphcapGraph **out);

/**
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum GraphcapStatus graphcap_graph_from_graph6(const char *text, struct GraphcapGraph **out);

/**
 * Writes a newly allocated graph6 string to `*out`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum GraphcapStatus graphcap_graph_to_graph6(const struct GraphcapGraph *g, char **out);

/**
 * # Safety
 * `s` must come from this library, or be null.
 */
void graphcap_string_free(char *s);

/**
 * # Safety
 * `g` must be a live handle or null; it is invalid afterwards.
 */
void graphcap_graph_free(struct GraphcapGraph *g);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `g` must be a live handle or null.
 */
size_t graphcap_graph_vertex_count(const struct GraphcapGraph *g);

/**
 * # Safety
 * `g` must be a live handle or null.
 */
size_t graphcap_graph_edge_count(const struct GraphcapGraph *g);

/**
 * Disjoint union.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum GraphcapStatus graphcap_graph_sum(const struct GraphcapGraph *a,
                                       const struct GraphcapGraph *b,
                                       struct GraphcapGraph **out);

/**
 * Strong product; vertex (u, v) has index u·|b| + v.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum GraphcapStatus graphcap_graph_strong_product(const struct GraphcapGraph *a,
                                                  const struct GraphcapGraph *b,
                                                  struct GraphcapGraph **out);

/**
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum GraphcapStatus graphcap_graph_power(const struct GraphcapGraph *g,
                                         uint32_t k,
                                         struct GraphcapGraph **out);

/**
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum GraphcapStatus graphcap_graph_complement(const struct GraphcapGraph *g,
                                              struct GraphcapGraph **out);

/**
 * Exact stable set number. A zero budget means the library default.
 *
 * The witness is copied into `witness` when `witness_cap` is large enough;
 * `*witness_len` always receives its length. With a short buffer the call
 * returns `BufferTooSmall` after setting `*value` and `*witness_len`.
 *
 * # Safety
 * `g` must be a live handle; `value` and `witness_len` must be writable;
 * `witness` must hold `witness_cap` elements or be null.
 */
enum GraphcapStatus graphcap_alpha(const struct GraphcapGraph *g,
                                   uint64_t max_nodes,
                                   uint64_t max_seconds,
                                   size_t *value,
                                   size_t *witness,
                                   size_t witness_cap,
                                   size_t *witness_len);

/**
 * Lovász theta with certified bounds. `tol <= 0` selects the default.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum GraphcapStatus graphcap_theta(const struct GraphcapGraph *g,
                                   double tol,
                                   struct GraphcapTheta *out);

/**
 * Certified Shannon capacity enclosure using powers up to `kmax`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum GraphcapStatus graphcap_capacity(const struct GraphcapGraph *g,
                                      uint32_t kmax,
                                      struct GraphcapInterval *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRAPHCAP_H */
