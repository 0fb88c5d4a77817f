#ifndef CONSETS_H
#define CONSETS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ConsetsCountMode {
  CONSETS_COUNT_MODE_CONNECTED = 0,
  CONSETS_COUNT_MODE_DOMINATING_CONNECTED = 1,
  CONSETS_COUNT_MODE_INDEPENDENT = 2,
} ConsetsCountMode;

typedef enum ConsetsEngine {
  CONSETS_ENGINE_BRUTE = 0,
  CONSETS_ENGINE_RECURSIVE = 1,
  CONSETS_ENGINE_BOTH = 2,
} ConsetsEngine;

typedef enum ConsetsStatus {
  CONSETS_STATUS_OK = 0,
  CONSETS_STATUS_NULL_POINTER = 1,
  CONSETS_STATUS_INVALID_ARGUMENT = 2,
  CONSETS_STATUS_GRAPH6 = 3,
  CONSETS_STATUS_CAPACITY = 4,
  CONSETS_STATUS_BUDGET = 5,
  CONSETS_STATUS_NO_CONVERGENCE = 6,
  CONSETS_STATUS_ENGINE_MISMATCH = 7,
  CONSETS_STATUS_IO = 8,
  CONSETS_STATUS_INTERNAL = 9,
} ConsetsStatus;

typedef enum ConsetsTransferMode {
  CONSETS_TRANSFER_MODE_CONNECTED = 0,
  CONSETS_TRANSFER_MODE_DOMINATING = 1,
} ConsetsTransferMode;

// A base graph together with its marked cycle.
typedef struct ConsetsGadget ConsetsGadget;

// A simple graph on at most 64 vertices.
typedef struct ConsetsGraph ConsetsGraph;

// A built transfer matrix.
typedef struct ConsetsTransfer ConsetsTransfer;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. The pointer
// stays valid until the next failing call on the same thread.
const char *consets_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void consets_string_free(char *s);

// Parses one graph6 line.
//
// # Safety
// `text` must be a nul-terminated string; `out` must be writable.
enum ConsetsStatus consets_graph_from_graph6(const char *text, struct ConsetsGraph **out);

// Builds a named graph family member, e.g. `"complete_bipartite"` with
// parameters `{4, 4}`.
//
// # Safety
// `name` must be a nul-terminated string, `params` must point to
// `n_params` values (or be null when `n_params` is 0), `out` must be
// writable.
enum ConsetsStatus consets_graph_family(const char *name,
                                        const size_t *params,
                                        size_t n_params,
                                        struct ConsetsGraph **out);

// # Safety
// `g` must be null or a handle from this library that has not been freed.
void consets_graph_free(struct ConsetsGraph *g);

// Number of vertices, or 0 for a null handle.
//
// # Safety
// `g` must be null or a live graph handle.
size_t consets_graph_order(const struct ConsetsGraph *g);

// Encodes the graph as graph6; free the result with
// [`consets_string_free`].
//
// # Safety
// `g` must be a live graph handle; `out` must be writable.
enum ConsetsStatus consets_graph_to_graph6(const struct ConsetsGraph *g, char **out);

// Counts vertex sets of `g`. The exact count is written as a decimal
// string (free with [`consets_string_free`]) and `count^(1/n)` to
// `out_c`, which may be null.
//
// # Safety
// `g` must be a live graph handle; `out_count` must be writable;
// `out_c` must be null or writable.
enum ConsetsStatus consets_count(const struct ConsetsGraph *g,
                                 enum ConsetsCountMode mode,
                                 enum ConsetsEngine engine,
                                 char **out_count,
                                 double *out_c);

// Pairs a copy of `base` with the cycle `cycle[0..len]`.
//
// # Safety
// `base` must be a live graph handle, `cycle` must point to `len` values,
// `out` must be writable.
enum ConsetsStatus consets_gadget_new(const struct ConsetsGraph *base,
                                      const size_t *cycle,
                                      size_t len,
                                      struct ConsetsGadget **out);

// # Safety
// `g` must be null or a gadget handle that has not been freed.
void consets_gadget_free(struct ConsetsGadget *g);

// Glues `k` copies of the gadget along its cycle.
//
// # Safety
// `gadget` must be a live gadget handle; `out` must be writable.
enum ConsetsStatus consets_glue(const struct ConsetsGadget *gadget,
                                size_t k,
                                struct ConsetsGraph **out);

// Builds the transfer matrix of a gadget.
//
// # Safety
// `gadget` must be a live gadget handle; `out` must be writable.
enum ConsetsStatus consets_transfer_build(const struct ConsetsGadget *gadget,
                                          enum ConsetsTransferMode mode,
                                          bool merge,
                                          bool trim,
                                          struct ConsetsTransfer **out);

// # Safety
// `t` must be null or a transfer handle that has not been freed.
void consets_transfer_free(struct ConsetsTransfer *t);

// Number of states, or 0 for a null handle.
//
// # Safety
// `t` must be null or a live transfer handle.
size_t consets_transfer_dim(const struct ConsetsTransfer *t);

// Dominant eigenvalue and the bound `lambda^(1/n0)`. A nonpositive `tol`
// or zero `max_iter` selects the defaults. `out_bound` may be null.
//
// # Safety
// `t` must be a live transfer handle; `out_lambda` must be writable;
// `out_bound` must be null or writable.
enum ConsetsStatus consets_transfer_spectral(const struct ConsetsTransfer *t,
                                             double tol,
                                             size_t max_iter,
                                             double *out_lambda,
                                             double *out_bound);

// Exact number of length-`k` walks from the full column back to itself,
// as a decimal string.
//
// # Safety
// `t` must be a live transfer handle; `out` must be writable.
enum ConsetsStatus consets_transfer_path_count(const struct ConsetsTransfer *t,
                                               size_t k,
                                               char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CONSETS_H */
