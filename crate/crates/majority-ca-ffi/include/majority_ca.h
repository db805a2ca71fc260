#ifndef MAJORITY_CA_H
#define MAJORITY_CA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum McaStatus {
  MCA_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  MCA_STATUS_NULL_ARGUMENT = 1,
  /**
   * A parameter was out of range or structurally invalid.
   */
  MCA_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The rule/operation combination has no defined behavior.
   */
  MCA_STATUS_UNSUPPORTED = 3,
  /**
   * Generation length does not match the topology.
   */
  MCA_STATUS_SIZE_MISMATCH = 4,
  /**
   * No path exists between the queried vertices.
   */
  MCA_STATUS_DISCONNECTED = 5,
  /**
   * Exhaustive verification would exceed the configured cap.
   */
  MCA_STATUS_INSTANCE_TOO_LARGE = 6,
  /**
   * A deterministic run failed to cycle within its step budget.
   */
  MCA_STATUS_BUDGET_EXHAUSTED = 7,
} McaStatus;

/**
 * Lattice adjacency kind.
 */
typedef enum McaNeighborhood {
  MCA_NEIGHBORHOOD_NEUMANN = 0,
  MCA_NEIGHBORHOOD_MOORE = 1,
} McaNeighborhood;

/**
 * Update rule selector.
 */
typedef enum McaRule {
  MCA_RULE_MAJORITY = 0,
  MCA_RULE_BIASED_MAJORITY = 1,
  MCA_RULE_RANDOM_MAJORITY = 2,
  MCA_RULE_CONSERVATIVE_MAJORITY = 3,
} McaRule;

/**
 * Final classification of a run or generation.
 */
typedef enum McaClassification {
  MCA_CLASSIFICATION_B_MONOCHROMATIC = 0,
  MCA_CLASSIFICATION_R_MONOCHROMATIC = 1,
  MCA_CLASSIFICATION_BICHROMATIC = 2,
} McaClassification;

/**
 * Opaque vertex-coloring handle.
 */
typedef struct McaGeneration McaGeneration;

/**
 * Opaque immutable graph handle.
 */
typedef struct McaTopology McaTopology;

/**
 * Opaque update-rule handle; random majority carries its tie-break stream
 * here, so a handle should drive at most one run at a time.
 */
typedef struct McaUpdateRule McaUpdateRule;

/**
 * Outcome of a run. `period` is 1 or 2, or 0 when a random-majority run
 * hit its step budget without a detected cycle.
 */
typedef struct McaRunOutcome {
  uint64_t consensus_time;
  uint32_t period;
  enum McaClassification classification;
  uint64_t final_blue_count;
  uint64_t steps_executed;
} McaRunOutcome;

/**
 * Axis-aligned, possibly wrapping lattice rectangle.
 */
typedef struct McaRectangle {
  uint64_t anchor_i;
  uint64_t anchor_j;
  uint64_t rows;
  uint64_t cols;
} McaRectangle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Stable, static name for a status code.
 */
const char *mca_status_name(enum McaStatus status);

/**
 * Builds an n-by-n grid (`wrap = false`) or torus (`wrap = true`).
 *
 * # Safety
 * `out` must be a valid pointer to a `McaTopology*`.
 */
enum McaStatus mca_topology_new_lattice(uint64_t n,
                                        enum McaNeighborhood kind,
                                        bool wrap,
                                        struct McaTopology **out);

/**
 * Builds the cycle on n >= 3 vertices.
 *
 * # Safety
 * `out` must be a valid pointer to a `McaTopology*`.
 */
enum McaStatus mca_topology_new_cycle(uint64_t n, struct McaTopology **out);

/**
 * Builds a general graph from `edge_count` undirected edges given as
 * flattened endpoint pairs `[u0, v0, u1, v1, ...]`.
 *
 * # Safety
 * `endpoints` must point to `2 * edge_count` readable u64 values (or be
 * null when `edge_count` is zero); `out` must be valid.
 */
enum McaStatus mca_topology_new_from_edges(uint64_t vertex_count,
                                           const uint64_t *endpoints,
                                           uint64_t edge_count,
                                           struct McaTopology **out);

/**
 * Frees a topology handle; null is ignored.
 *
 * # Safety
 * `t` must be null or a pointer obtained from `mca_topology_new_*` that
 * has not been freed yet.
 */
void mca_topology_free(struct McaTopology *t);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `t` must be null or a live topology handle.
 */
uint64_t mca_topology_vertex_count(const struct McaTopology *t);

/**
 * Number of undirected edges, or 0 for a null handle.
 *
 * # Safety
 * `t` must be null or a live topology handle.
 */
uint64_t mca_topology_edge_count(const struct McaTopology *t);

/**
 * Shifted shortest-path distance: path edge count minus one, zero for
 * identical or adjacent vertices.
 *
 * # Safety
 * `t` must be a live topology handle and `out` a valid u64 pointer.
 */
enum McaStatus mca_vertex_distance(const struct McaTopology *t,
                                   uint64_t u,
                                   uint64_t v,
                                   uint64_t *out);

/**
 * All vertices blue (`blue = true`) or red.
 *
 * # Safety
 * `t` must be a live topology handle; `out` a valid `McaGeneration*` slot.
 */
enum McaStatus mca_generation_new_uniform(const struct McaTopology *t,
                                          bool blue,
                                          struct McaGeneration **out);

/**
 * Seeded random generation: vertex k is blue iff the k-th splitmix64
 * output of `seed`, mapped to [0, 1), is below `p_b`.
 *
 * # Safety
 * `t` must be a live topology handle; `out` a valid slot.
 */
enum McaStatus mca_generation_new_random(const struct McaTopology *t,
                                         double p_b,
                                         uint64_t seed,
                                         struct McaGeneration **out);

/**
 * Builds a generation from `len` bytes, nonzero meaning blue. `len` must
 * equal the topology's vertex count.
 *
 * # Safety
 * `t` must be a live handle, `colors` must point to `len` readable bytes,
 * and `out` must be valid.
 */
enum McaStatus mca_generation_new_from_colors(const struct McaTopology *t,
                                              const uint8_t *colors,
                                              uint64_t len,
                                              struct McaGeneration **out);

/**
 * Frees a generation handle; null is ignored.
 *
 * # Safety
 * `g` must be null or a live generation handle not yet freed.
 */
void mca_generation_free(struct McaGeneration *g);

/**
 * Number of vertices colored, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live generation handle.
 */
uint64_t mca_generation_len(const struct McaGeneration *g);

/**
 * Number of blue vertices, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live generation handle.
 */
uint64_t mca_generation_blue_count(const struct McaGeneration *g);

/**
 * Writes 1 when vertex `v` is blue, 0 when red.
 *
 * # Safety
 * `g` must be a live generation handle and `out` a valid byte pointer.
 */
enum McaStatus mca_generation_get(const struct McaGeneration *g, uint64_t v, uint8_t *out);

/**
 * Creates a rule handle. `tie_seed` feeds the random-majority tie stream
 * and is ignored by the deterministic rules.
 *
 * # Safety
 * `out` must be a valid `McaUpdateRule*` slot.
 */
enum McaStatus mca_rule_new(enum McaRule rule, uint64_t tie_seed, struct McaUpdateRule **out);

/**
 * Frees a rule handle; null is ignored.
 *
 * # Safety
 * `rule` must be null or a live rule handle not yet freed.
 */
void mca_rule_free(struct McaUpdateRule *rule);

/**
 * One synchronous step; advances the rule's tie stream if it has one.
 *
 * # Safety
 * All handles must be live; `out` must be a valid slot.
 */
enum McaStatus mca_step(const struct McaTopology *t,
                        struct McaUpdateRule *rule,
                        const struct McaGeneration *g,
                        struct McaGeneration **out);

/**
 * Runs to a detected period-1/2 cycle. `max_steps = 0` selects the
 * automatic budget `|E| + |V| + 2`.
 *
 * # Safety
 * All handles must be live; `out` must point to a writable outcome struct.
 */
enum McaStatus mca_run_to_cycle(const struct McaTopology *t,
                                struct McaUpdateRule *rule,
                                const struct McaGeneration *g0,
                                uint64_t max_steps,
                                struct McaRunOutcome *out);

/**
 * Whether the vertex set keeps `blue ? blue : red` against every outside
 * coloring, under majority or biased majority.
 *
 * # Safety
 * `t` must be live, `vertices` must point to `len` readable u64 values,
 * and `out` must be valid.
 */
enum McaStatus mca_is_robust_set(const struct McaTopology *t,
                                 enum McaRule rule,
                                 const uint64_t *vertices,
                                 uint64_t len,
                                 bool blue,
                                 bool *out);

/**
 * Whether the vertex set guarantees its color survives somewhere forever,
 * by exhaustive simulation of all `2^(|V| - len)` outside colorings.
 * `budget` caps `|V| - len`.
 *
 * # Safety
 * Same contract as [`mca_is_robust_set`].
 */
enum McaStatus mca_is_eternal_set(const struct McaTopology *t,
                                  enum McaRule rule,
                                  const uint64_t *vertices,
                                  uint64_t len,
                                  bool blue,
                                  uint64_t budget,
                                  bool *out);

/**
 * Size of the largest same-color cluster under Moore adjacency.
 *
 * # Safety
 * Handles must be live; `out` must be valid.
 */
enum McaStatus mca_moore_largest_cluster(const struct McaTopology *t,
                                         const struct McaGeneration *g,
                                         bool blue,
                                         uint64_t *out);

/**
 * Worst-case consensus time: |E| for majority, |E| + |V| for biased.
 *
 * # Safety
 * `t` must be live; `out` must be valid.
 */
enum McaStatus mca_consensus_time_bound(const struct McaTopology *t,
                                        enum McaRule rule,
                                        uint64_t *out);

/**
 * The two phase-transition densities for a side-n torus.
 *
 * # Safety
 * `out_p1` and `out_p2` must be valid f64 pointers.
 */
enum McaStatus mca_threshold_values(enum McaRule rule,
                                    enum McaNeighborhood kind,
                                    uint64_t n,
                                    double *out_p1,
                                    double *out_p2);

/**
 * Survival bound `exp(-k * p_b^s)` for k disjoint eternal sets.
 *
 * # Safety
 * `out` must be a valid f64 pointer.
 */
enum McaStatus mca_survival_bound_disjoint(uint64_t k, uint32_t s, double p_b, double *out);

/**
 * Survival bound `exp(-k^2 p_b^(2s) / (2 sum a_i^2))` for overlapping
 * eternal sets with per-vertex multiplicities.
 *
 * # Safety
 * `multiplicities` must point to `len` readable u64 values; `out` must be
 * valid.
 */
enum McaStatus mca_survival_bound_azuma(uint64_t k,
                                        uint32_t s,
                                        double p_b,
                                        const uint64_t *multiplicities,
                                        uint64_t len,
                                        double *out);

/**
 * Shifted distance between two rectangles on the lattice.
 *
 * # Safety
 * `t` must be live; `out` must be valid.
 */
enum McaStatus mca_rectangle_distance(const struct McaTopology *t,
                                      struct McaRectangle a,
                                      struct McaRectangle b,
                                      uint64_t *out);

/**
 * Merges rectangles until all pairs are at distance >= 2, writing at most
 * `capacity` results (the output never exceeds the input length) and the
 * actual count to `out_len`.
 *
 * # Safety
 * `rectangles` must point to `len` readable rectangles, `out` to
 * `capacity` writable slots, and `out_len` must be valid.
 */
enum McaStatus mca_rectangulate(const struct McaTopology *t,
                                const struct McaRectangle *rectangles,
                                uint64_t len,
                                struct McaRectangle *out,
                                uint64_t capacity,
                                uint64_t *out_len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MAJORITY_CA_H */
