#ifndef SEPGRAPH_H
#define SEPGRAPH_H

/* Generated by cbindgen from the sepgraph-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status code returned by every fallible call.
typedef enum {
  SG_OK = 0,
  SG_ERR_NULL_ARGUMENT = 1,
  SG_ERR_INVALID_ARGUMENT = 2,
  SG_ERR_PARSE = 3,
  SG_ERR_INVALID_SEPARATOR = 4,
  SG_ERR_UNSUPPORTED = 5,
  SG_ERR_PROBABILISTIC_FAILURE = 6,
  SG_ERR_BUFFER_TOO_SMALL = 7,
} SgStatus;

// Opaque decomposition handle (separator plus packed parts).
typedef struct SgDecomposition SgDecomposition;

// Opaque graph handle.
typedef struct SgGraph SgGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *sg_version(void);

// Message describing the most recent error on this thread. The pointer
// stays valid until the next failing call on the same thread.
const char *sg_last_error(void);

// Builds a graph from an edge list (`2 * m` entries: `u0 v0 u1 v1 ...`).
//
// # Safety
// `edges` must point to `2 * m` readable `uint32_t`s and `out` must be a
// valid location for one pointer.
SgStatus sg_graph_new(uint32_t n, const uint32_t *edges, uintptr_t m, SgGraph **out);

// Parses the text format (`p <n> <m>` header plus `u v` lines).
//
// # Safety
// `text` must be a valid NUL-terminated string.
SgStatus sg_graph_parse(const char *text, SgGraph **out);

// # Safety
// `g` must come from a constructor of this library and not be freed twice.
void sg_graph_free(SgGraph *g);

// # Safety
// `g` must be a live handle.
uint32_t sg_graph_n(const SgGraph *g);

// # Safety
// `g` must be a live handle.
uintptr_t sg_graph_m(const SgGraph *g);

// Validates `separator` as a `k`-separator of `g` and packs the
// decomposition.
//
// # Safety
// `separator` must point to `sep_len` readable entries; handles live.
SgStatus sg_decomposition_new(const SgGraph *g,
                              const uint32_t *separator,
                              uintptr_t sep_len,
                              uint32_t k,
                              SgDecomposition **out);

// Finds a separator automatically (exact vertex integrity for small
// budgets, greedy otherwise) and returns the decomposition plus its `k`.
//
// # Safety
// Handles and out-pointers must be valid.
SgStatus sg_decomposition_auto(const SgGraph *g, SgDecomposition **out, uint32_t *out_k);

// # Safety
// `d` must come from this library and not be freed twice.
void sg_decomposition_free(SgDecomposition *d);

// Girth of the graph: `*out_length` is set to the shortest cycle length,
// or -1 for a forest. When `cycle_buf` is non-null with capacity
// `cycle_cap >= length`, the witness cycle is written there.
//
// # Safety
// Handles must be live; `cycle_buf` (if non-null) must hold `cycle_cap`
// writable entries.
SgStatus sg_girth(const SgGraph *g,
                  const SgDecomposition *d,
                  int64_t *out_length,
                  uint32_t *cycle_buf,
                  uintptr_t cycle_cap);

// Shortest even cycle; same conventions as [`sg_girth`].
//
// # Safety
// As for [`sg_girth`].
SgStatus sg_even_girth(const SgGraph *g,
                       const SgDecomposition *d,
                       int64_t *out_length,
                       uint32_t *cycle_buf,
                       uintptr_t cycle_cap);

// Randomized search for a cycle of exactly `length` (between 3 and 8).
// `*out_found` reports the outcome; a found cycle is written to
// `cycle_buf` (capacity at least `length`). One-sided error: a found
// cycle is always genuine.
//
// # Safety
// Handles live; `cycle_buf` writable with the stated capacity.
SgStatus sg_find_cycle(const SgGraph *g,
                       const SgDecomposition *d,
                       uintptr_t length,
                       double failure_prob,
                       uint64_t seed,
                       uint32_t *cycle_buf,
                       uintptr_t cycle_cap,
                       bool *out_found);

// Number of induced copies of the pattern modulo its per-pattern modulus.
// Supported tokens: diamond, co-diamond, claw, co-claw, paw, co-paw, p4.
//
// # Safety
// Handles live; `token` NUL-terminated; out-pointers writable.
SgStatus sg_count_mod(const SgGraph *g,
                      const SgDecomposition *d,
                      const char *token,
                      uint64_t *out_residue,
                      uint64_t *out_modulus);

// One-sided induced-subgraph detection (any token except k4 / co-k4).
//
// # Safety
// Handles live; `token` NUL-terminated; `out_found` writable.
SgStatus sg_detect_induced(const SgGraph *g,
                           const SgDecomposition *d,
                           const char *token,
                           double failure_prob,
                           uint64_t seed,
                           bool *out_found);

// Finds an induced copy; on success writes the four witness vertices (role
// order of the pattern) into `out_vertices`.
//
// # Safety
// Handles live; `out_vertices` holds four writable entries.
SgStatus sg_find_induced(const SgGraph *g,
                         const SgDecomposition *d,
                         const char *token,
                         double failure_prob,
                         uint64_t seed,
                         uint32_t *out_vertices,
                         bool *out_found);

// Exact clique detection (`K_ell` inside some `G[S + T_i]`).
//
// # Safety
// Handles live; `out_found` writable.
SgStatus sg_detect_clique(const SgGraph *g,
                          const SgDecomposition *d,
                          uintptr_t ell,
                          bool *out_found);

// Exact independent-set detection.
//
// # Safety
// Handles live; `out_found` writable.
SgStatus sg_detect_independent_set(const SgGraph *g,
                                   const SgDecomposition *d,
                                   uintptr_t ell,
                                   bool *out_found);

// One-sided perfect matching test ("yes" is always correct).
//
// # Safety
// Handles live; `out_has` writable.
SgStatus sg_has_perfect_matching(const SgGraph *g,
                                 const SgDecomposition *d,
                                 uintptr_t trials,
                                 uint64_t seed,
                                 bool *out_has);

// Maximum matching. `edge_buf` receives `2 * size` endpoints
// (`u0 v0 u1 v1 ...`, ascending); a capacity of `n` entries always
// suffices. `*out_size` is the number of edges.
//
// # Safety
// Handles live; `edge_buf` holds `edge_cap` writable entries.
SgStatus sg_max_matching(const SgGraph *g,
                         const SgDecomposition *d,
                         uint64_t seed,
                         uint32_t *edge_buf,
                         uintptr_t edge_cap,
                         uintptr_t *out_size);

// All-pairs shortest paths: writes the row-major `n * n` distance matrix
// with -1 for unreachable pairs. `use_bd_kernel` selects the
// bounded-difference min-plus kernel (outputs are identical).
//
// # Safety
// Handles live; `dist_buf` holds `dist_cap >= n * n` writable entries.
SgStatus sg_apsp(const SgGraph *g,
                 const SgDecomposition *d,
                 bool use_bd_kernel,
                 int64_t *dist_buf,
                 uintptr_t dist_cap);

// Distances up to `d_max`; pairs further than that (or disconnected) get
// -1.
//
// # Safety
// As for [`sg_apsp`].
SgStatus sg_apsp_bounded(const SgGraph *g,
                         const SgDecomposition *d,
                         uintptr_t d_max,
                         int64_t *dist_buf,
                         uintptr_t dist_cap);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SEPGRAPH_H */
