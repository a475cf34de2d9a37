#ifndef LINKRANK_H
#define LINKRANK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LrStatus {
  LR_STATUS_OK = 0,
  LR_STATUS_NULL_POINTER = 1,
  LR_STATUS_INVALID_ARGUMENT = 2,
  LR_STATUS_IO = 3,
  LR_STATUS_PARSE = 4,
  LR_STATUS_EMPTY_GRAPH = 5,
  LR_STATUS_DEGENERATE = 6,
  LR_STATUS_UNDEFINED = 7,
  LR_STATUS_PANIC = 99,
} LrStatus;

typedef enum LrAlgorithm {
  LR_ALGORITHM_HITS = 0,
  LR_ALGORITHM_ACCELERATED_HITS = 1,
  LR_ALGORITHM_ACCELERATED_HITS_POSITIVE = 2,
  LR_ALGORITHM_PAGE_RANK = 3,
} LrAlgorithm;

/**
 * Which vector of a ranking to read.
 */
typedef enum LrVectorKind {
  /**
   * Authority vector, or the PageRank vector.
   */
  LR_VECTOR_KIND_PRIMARY = 0,
  /**
   * Hub vector; not available for PageRank.
   */
  LR_VECTOR_KIND_HUB = 1,
} LrVectorKind;

/**
 * Opaque graph handle.
 */
typedef struct LrGraph LrGraph;

/**
 * Opaque solver result handle.
 */
typedef struct LrRanking LrRanking;

typedef struct LrSynthSpec {
  uint64_t n;
  double target_avg_degree;
  double in_exponent;
  double out_exponent;
  double dangling_fraction;
  uint64_t seed;
} LrSynthSpec;

typedef struct LrGraphStats {
  uint64_t n;
  uint64_t nnz;
  uint64_t dangling_count;
  double dangling_percent;
  double average_degree;
  /**
   * Fractions of pages with `indeg/deg` above 0.6, 0.7, 0.8, 0.9.
   */
  double fi[4];
  /**
   * Fractions of pages with `outdeg/deg` above 0.6, 0.7, 0.8, 0.9.
   */
  double fo[4];
} LrGraphStats;

typedef struct LrSolverConfig {
  double epsilon;
  uint64_t max_iter;
  double alpha;
  double zeta;
} LrSolverConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *lr_last_error_message(void);

/**
 * Builds a graph on `n` nodes from `len` edges `src[k] -> dst[k]`.
 * Self-loops are dropped and duplicates collapsed.
 *
 * # Safety
 * `src` and `dst` must each point to `len` readable values; `out` must be writable.
 */
enum LrStatus lr_graph_from_edges(uint64_t n,
                                  const uint64_t *src,
                                  const uint64_t *dst,
                                  size_t len,
                                  struct LrGraph **out);

/**
 * Loads a text edge list or binary CSR cache.
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out` must be writable.
 */
enum LrStatus lr_graph_load(const char *path, struct LrGraph **out);

/**
 * Writes `graph` as a text edge list, or as the binary cache when `binary` is set.
 *
 * # Safety
 * `graph` must be a live handle and `path` a NUL-terminated string.
 */
enum LrStatus lr_graph_save(const struct LrGraph *graph, const char *path, bool binary);

/**
 * Generates a synthetic power-law graph.
 *
 * # Safety
 * `spec` must be readable and `out` writable.
 */
enum LrStatus lr_graph_generate(const struct LrSynthSpec *spec, struct LrGraph **out);

/**
 * Default generator settings: 10000 nodes, average degree 8, exponents 2.1/2.7, 80% dangling.
 */
struct LrSynthSpec lr_synth_spec_default(void);

/**
 * New handle holding the back-button rewrite of `graph`.
 *
 * # Safety
 * `graph` must be a live handle and `out` writable.
 */
enum LrStatus lr_graph_back_button(const struct LrGraph *graph, struct LrGraph **out);

/**
 * # Safety
 * `graph` must be NULL or a handle not yet freed.
 */
void lr_graph_free(struct LrGraph *graph);

/**
 * Node count, or 0 for NULL.
 *
 * # Safety
 * `graph` must be NULL or a live handle.
 */
uint64_t lr_graph_node_count(const struct LrGraph *graph);

/**
 * Edge count, or 0 for NULL.
 *
 * # Safety
 * `graph` must be NULL or a live handle.
 */
uint64_t lr_graph_edge_count(const struct LrGraph *graph);

/**
 * Number of pages without outlinks, or 0 for NULL.
 *
 * # Safety
 * `graph` must be NULL or a live handle.
 */
uint64_t lr_graph_dangling_count(const struct LrGraph *graph);

/**
 * # Safety
 * `graph` must be a live handle and `out` writable.
 */
enum LrStatus lr_graph_stats(const struct LrGraph *graph, struct LrGraphStats *out);

/**
 * epsilon 1e-10, max_iter 10000, alpha 0.85, zeta 0.99.
 */
struct LrSolverConfig lr_solver_config_default(void);

/**
 * Closed-form per-iteration multiplication and addition counts.
 *
 * # Safety
 * `graph` must be a live handle; `mults` and `adds` must be writable.
 */
enum LrStatus lr_count_costs(enum LrAlgorithm algorithm,
                             const struct LrGraph *graph,
                             uint64_t *mults,
                             uint64_t *adds);

/**
 * Runs a solver from the uniform start. `config` may be NULL for defaults.
 *
 * # Safety
 * `graph` must be a live handle, `config` NULL or readable, `out` writable.
 */
enum LrStatus lr_rank(const struct LrGraph *graph,
                      enum LrAlgorithm algorithm,
                      const struct LrSolverConfig *config,
                      struct LrRanking **out);

/**
 * # Safety
 * `ranking` must be NULL or a handle not yet freed.
 */
void lr_ranking_free(struct LrRanking *ranking);

/**
 * Length of the score vectors, or 0 for NULL.
 *
 * # Safety
 * `ranking` must be NULL or a live handle.
 */
size_t lr_ranking_len(const struct LrRanking *ranking);

/**
 * Iterations run (`K`), or 0 for NULL.
 *
 * # Safety
 * `ranking` must be NULL or a live handle.
 */
uint64_t lr_ranking_iterations(const struct LrRanking *ranking);

/**
 * Whether the residual reached epsilon before the iteration cap.
 *
 * # Safety
 * `ranking` must be NULL or a live handle.
 */
bool lr_ranking_converged(const struct LrRanking *ranking);

/**
 * Residual of the last iteration, NaN for NULL.
 *
 * # Safety
 * `ranking` must be NULL or a live handle.
 */
double lr_ranking_final_residual(const struct LrRanking *ranking);

/**
 * Cumulative operation counts over the whole run.
 *
 * # Safety
 * `ranking` must be a live handle; `mults` and `adds` must be writable.
 */
enum LrStatus lr_ranking_op_counts(const struct LrRanking *ranking,
                                   uint64_t *mults,
                                   uint64_t *adds);

/**
 * Copies one score vector into `buf`, which must hold exactly `len` values
 * with `len` equal to [`lr_ranking_len`].
 *
 * # Safety
 * `ranking` must be a live handle and `buf` must point to `len` writable doubles.
 */
enum LrStatus lr_ranking_copy_vector(const struct LrRanking *ranking,
                                     enum LrVectorKind kind,
                                     double *buf,
                                     size_t len);

/**
 * Cosine similarity; `LR_STATUS_UNDEFINED` when either vector is zero.
 *
 * # Safety
 * `u` and `v` must point to `len` readable doubles; `out` must be writable.
 */
enum LrStatus lr_cosine(const double *u, const double *v, size_t len, double *out);

/**
 * Spearman correlation with average ranks for ties; `LR_STATUS_UNDEFINED` for constant input.
 *
 * # Safety
 * `u` and `v` must point to `len` readable doubles; `out` must be writable.
 */
enum LrStatus lr_spearman(const double *u, const double *v, size_t len, double *out);

/**
 * # Safety
 * `u` and `v` must point to `len` readable doubles; `out` must be writable.
 */
enum LrStatus lr_l1_distance(const double *u, const double *v, size_t len, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LINKRANK_H */
