#ifndef GRAPH_ENERGY_H
#define GRAPH_ENERGY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define GE_OK 0

/**
 * Some record of a verification report is a fatal MISMATCH.
 */
#define GE_MISMATCH 1

/**
 * Malformed input: bad spec string, bad UTF-8, invalid tolerances.
 */
#define GE_PARSE_ERROR 2

/**
 * Mathematical domain error: disconnected graph, isolated vertex, m out of range.
 */
#define GE_DOMAIN_ERROR 3

#define GE_NULL_POINTER 4

/**
 * The output buffer is too small; the required length was written.
 */
#define GE_BUFFER_TOO_SMALL 5

#define GE_INVALID_ARGUMENT 6

#define GE_PANIC 7

#define GE_MATRIX_ADJACENCY 0

#define GE_MATRIX_RANDIC 1

#define GE_MATRIX_NORMALIZED_LAPLACIAN 2

#define GE_MODE_AS_PRINTED 0

#define GE_MODE_CORRECTED 1

#define GE_MODE_BOTH 2

/**
 * Opaque graph handle.
 */
typedef struct GeGraph GeGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *ge_last_error_message(void);

/**
 * Builds a graph on `p` vertices from `q` pairs stored as `edges[2k]`,
 * `edges[2k+1]`.
 *
 * # Safety
 * `edges` must point to `2 * q` readable values (or be null when `q == 0`);
 * `out` must be writable.
 */
int32_t ge_graph_from_edges(size_t p, const size_t *edges, size_t q, struct GeGraph **out);

/**
 * Builds a named graph: `k:n`, `cycle:n`, `star:n`, `path:n`, `petersen`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string; `out` must be writable.
 */
int32_t ge_graph_generate(const char *spec, struct GeGraph **out);

/**
 * Applies an operation such as `shadow:3` or `h1:4:0:3`, producing a new graph.
 *
 * # Safety
 * `g` must be a live handle, `op` a NUL-terminated string, `out` writable.
 */
int32_t ge_graph_apply(const struct GeGraph *g, const char *op, struct GeGraph **out);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t ge_graph_order(const struct GeGraph *g);

/**
 * Number of edges, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t ge_graph_size(const struct GeGraph *g);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `g` must be null or a handle not yet freed.
 */
void ge_graph_free(struct GeGraph *g);

/**
 * Energy (sum of absolute eigenvalues) of the chosen matrix.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
int32_t ge_energy(const struct GeGraph *g, int32_t matrix, double *out);

/**
 * Writes the ascending eigenvalues into `buf` and their count into `len`.
 * If `cap` is too small only `len` is written and `GE_BUFFER_TOO_SMALL`
 * returned.
 *
 * # Safety
 * `g` must be a live handle, `buf` writable for `cap` values (may be null
 * when `cap == 0`), `len` writable.
 */
int32_t ge_eigenvalues(const struct GeGraph *g,
                       int32_t matrix,
                       double *buf,
                       size_t cap,
                       size_t *len);

/**
 * Kemeny's constant of a connected graph.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
int32_t ge_kemeny(const struct GeGraph *g, double *out);

/**
 * Degree Kirchhoff index of a connected graph.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
int32_t ge_kirchhoff(const struct GeGraph *g, double *out);

/**
 * Spectral spanning-tree count of a connected graph.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
int32_t ge_spanning_trees(const struct GeGraph *g, double *out);

/**
 * Exact spanning-tree count by integer elimination; fails with
 * `GE_DOMAIN_ERROR` on overflow of 64 bits.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
int32_t ge_matrix_tree_count(const struct GeGraph *g, uint64_t *out);

/**
 * Predicted energy of `op(G)` from the energy of `G`.
 *
 * # Safety
 * `op` must be a NUL-terminated string and `out` writable.
 */
int32_t ge_predict_energy(double base_energy, const char *op, int32_t matrix, double *out);

/**
 * Verification records for a comma-separated operation list, as a JSON
 * array in `*out` (release with `ge_string_free`). Returns `GE_MISMATCH`
 * when a non-printed record mismatches; the report is written either way.
 *
 * # Safety
 * `g` must be a live handle, `ops` a NUL-terminated string, `out` writable.
 */
int32_t ge_verify_json(const struct GeGraph *g, const char *ops, int32_t mode, char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void ge_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRAPH_ENERGY_H */
