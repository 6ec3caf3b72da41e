#ifndef EGRAPHSIM_H
#define EGRAPHSIM_H

/* Generated with cbindgen:0.29.4 */

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result of every fallible call.
 */
typedef enum EgsStatus {
  EGS_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  EGS_STATUS_NULL_POINTER = 1,
  /**
   * A parameter or document is invalid.
   */
  EGS_STATUS_INVALID_ARGUMENT = 2,
  /**
   * A node, segment or numeric result is out of range.
   */
  EGS_STATUS_OUT_OF_RANGE = 3,
  /**
   * A link id does not name a live link.
   */
  EGS_STATUS_MISSING_LINK = 4,
  /**
   * The links cannot be swapped at the given node.
   */
  EGS_STATUS_SWAP_REJECTED = 5,
  /**
   * Executing a plan did not produce its target.
   */
  EGS_STATUS_PLAN_CORRUPTION = 6,
  /**
   * A value could not be converted to or from JSON or a C string.
   */
  EGS_STATUS_SERIALIZATION = 7,
  /**
   * The library panicked; the handle involved should be freed and not reused.
   */
  EGS_STATUS_PANIC = 8,
} EgsStatus;

/**
 * Node-ordering used to place a square lattice on the line.
 */
typedef enum EgsLatticeEmbedding {
  EGS_LATTICE_EMBEDDING_ROW_MAJOR = 0,
  EGS_LATTICE_EMBEDDING_SNAKE = 1,
} EgsLatticeEmbedding;

typedef enum EgsBellLabel {
  EGS_BELL_LABEL_PSI_PLUS = 0,
  EGS_BELL_LABEL_PSI_MINUS = 1,
  EGS_BELL_LABEL_PHI_PLUS = 2,
  EGS_BELL_LABEL_PHI_MINUS = 3,
} EgsBellLabel;

/**
 * Nodes on a line with their live links and cost ledger.
 */
typedef struct EgsNetwork EgsNetwork;

/**
 * Swap schedule for a target entanglement graph.
 */
typedef struct EgsPlan EgsPlan;

/**
 * How swaps resolve; sampled modes own their random stream.
 */
typedef struct EgsSwapMode EgsSwapMode;

typedef struct EgsLedger {
  uint64_t initial_links_created;
  uint64_t swaps_performed;
  uint64_t links_destroyed;
  uint64_t live_links;
} EgsLedger;

typedef struct EgsLink {
  uint64_t id;
  size_t a;
  size_t b;
  double lambda1;
  double lambda2;
} EgsLink;

typedef struct EgsSwapRecord {
  uint64_t produced;
  /**
   * False for ideal and average swaps, which draw no outcome.
   */
  bool has_outcome;
  enum EgsBellLabel outcome;
} EgsSwapRecord;

typedef struct EgsMetrics {
  size_t edge_count;
  size_t num_components;
  double mean_degree;
  double clustering_coefficient;
  double avg_path_length;
} EgsMetrics;

/**
 * One row of a swap outcome table.
 */
typedef struct EgsBellOutcome {
  enum EgsBellLabel label;
  double probability;
  double lambda1;
  double lambda2;
} EgsBellOutcome;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *egs_version(void);

/**
 * Message for the most recent failure on the calling thread, or null if none.
 * The pointer stays valid until the next failing call on this thread.
 */
const char *egs_last_error_message(void);

/**
 * Static name of a status code.
 */
const char *egs_status_name(enum EgsStatus status);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void egs_string_free(char *s);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum EgsStatus egs_plan_ring(size_t nodes, struct EgsPlan **out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum EgsStatus egs_plan_complete(size_t nodes, struct EgsPlan **out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum EgsStatus egs_plan_lattice(size_t side,
                                enum EgsLatticeEmbedding embedding,
                                struct EgsPlan **out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum EgsStatus egs_plan_hierarchical(uint32_t levels, struct EgsPlan **out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum EgsStatus egs_plan_random(size_t nodes, double keep_prob, uint64_t seed, struct EgsPlan **out);

/**
 * Plan for an arbitrary target given as `{"num_nodes", "edges", "name"}` JSON.
 *
 * # Safety
 * `egraph_json` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum EgsStatus egs_plan_for_target_json(const char *egraph_json, struct EgsPlan **out);

/**
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum EgsStatus egs_plan_from_json(const char *json, struct EgsPlan **out);

/**
 * # Safety
 * `plan` must be null or a live plan handle; it is invalid afterwards.
 */
void egs_plan_free(struct EgsPlan *plan);

/**
 * Number of nodes on the line, or 0 for a null handle.
 *
 * # Safety
 * `plan` must be null or a live plan handle.
 */
size_t egs_plan_num_nodes(const struct EgsPlan *plan);

/**
 * Nearest-neighbour links the plan creates, or 0 for a null handle.
 *
 * # Safety
 * `plan` must be null or a live plan handle.
 */
uint64_t egs_plan_predicted_cost(const struct EgsPlan *plan);

/**
 * # Safety
 * `plan` must be null or a live plan handle.
 */
size_t egs_plan_swap_count(const struct EgsPlan *plan);

/**
 * # Safety
 * `plan` must be null or a live plan handle.
 */
size_t egs_plan_edge_count(const struct EgsPlan *plan);

/**
 * Links per segment. `len` receives the segment count and up to `capacity`
 * entries are copied into `out`.
 *
 * # Safety
 * `plan` must be a live plan handle, `len` valid for writes and `out` valid
 * for `capacity` writes when `capacity > 0`.
 */
enum EgsStatus egs_plan_allocation(const struct EgsPlan *plan,
                                   uint64_t *out,
                                   size_t capacity,
                                   size_t *len);

/**
 * # Safety
 * `plan` must be a live plan handle; `out` must be valid for writes.
 */
enum EgsStatus egs_plan_to_json(const struct EgsPlan *plan, char **out);

/**
 * Executes the plan on a fresh network.
 *
 * # Safety
 * `plan` and `mode` must be live handles; `out` must be valid for writes.
 */
enum EgsStatus egs_plan_execute(const struct EgsPlan *plan,
                                struct EgsSwapMode *mode,
                                struct EgsNetwork **out);

/**
 * Swaps of maximally entangled links that always yield a maximally entangled link.
 */
struct EgsSwapMode *egs_swap_mode_ideal(void);

/**
 * Swaps that yield a link with the outcome-averaged concurrence.
 */
struct EgsSwapMode *egs_swap_mode_average(void);

/**
 * Swaps that draw a Bell outcome from a stream seeded with `seed`.
 */
struct EgsSwapMode *egs_swap_mode_sampled(uint64_t seed);

/**
 * # Safety
 * `mode` must be null or a live swap-mode handle; it is invalid afterwards.
 */
void egs_swap_mode_free(struct EgsSwapMode *mode);

/**
 * Empty network of `nodes` nodes.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum EgsStatus egs_network_new(size_t nodes, struct EgsNetwork **out);

/**
 * Network with `k` maximally entangled links on every segment.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum EgsStatus egs_network_chain(size_t nodes, uint64_t k, struct EgsNetwork **out);

/**
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum EgsStatus egs_network_from_json(const char *json, struct EgsNetwork **out);

/**
 * # Safety
 * `net` must be null or a live network handle; it is invalid afterwards.
 */
void egs_network_free(struct EgsNetwork *net);

/**
 * # Safety
 * `net` must be null or a live network handle.
 */
size_t egs_network_num_nodes(const struct EgsNetwork *net);

/**
 * # Safety
 * `net` must be null or a live network handle.
 */
size_t egs_network_link_count(const struct EgsNetwork *net);

/**
 * # Safety
 * `net` must be a live network handle; `out` must be valid for writes.
 */
enum EgsStatus egs_network_ledger(const struct EgsNetwork *net, struct EgsLedger *out);

/**
 * Live link ids in ascending order. `len` receives the number of live links
 * and up to `capacity` ids are copied into `out`.
 *
 * # Safety
 * `net` must be a live network handle, `len` valid for writes and `out`
 * valid for `capacity` writes when `capacity > 0`.
 */
enum EgsStatus egs_network_link_ids(const struct EgsNetwork *net,
                                    uint64_t *out,
                                    size_t capacity,
                                    size_t *len);

/**
 * # Safety
 * `net` must be a live network handle; `out` must be valid for writes.
 */
enum EgsStatus egs_network_link(const struct EgsNetwork *net, uint64_t id, struct EgsLink *out);

/**
 * Creates a link across `segment` (nodes `segment` and `segment + 1`) with
 * smaller Schmidt coefficient `lambda2`.
 *
 * # Safety
 * `net` must be a live network handle; `out_id` may be null.
 */
enum EgsStatus egs_network_add_local_link(struct EgsNetwork *net,
                                          size_t segment,
                                          double lambda2,
                                          uint64_t *out_id);

/**
 * # Safety
 * `net` must be a live network handle.
 */
enum EgsStatus egs_network_destroy_link(struct EgsNetwork *net, uint64_t id);

/**
 * Swaps links `link_a` and `link_b` at `node`.
 *
 * # Safety
 * `net` and `mode` must be live handles; `out` may be null.
 */
enum EgsStatus egs_network_swap(struct EgsNetwork *net,
                                struct EgsSwapMode *mode,
                                size_t node,
                                uint64_t link_a,
                                uint64_t link_b,
                                struct EgsSwapRecord *out);

/**
 * Keeps each live link independently with probability `keep_prob`.
 *
 * # Safety
 * `net` must be a live network handle; `out_destroyed` may be null.
 */
enum EgsStatus egs_network_prune(struct EgsNetwork *net,
                                 double keep_prob,
                                 uint64_t seed,
                                 size_t *out_destroyed);

/**
 * Structural metrics of the graph formed by the live links.
 *
 * # Safety
 * `net` must be a live network handle; `out` must be valid for writes.
 */
enum EgsStatus egs_network_metrics(const struct EgsNetwork *net, struct EgsMetrics *out);

/**
 * # Safety
 * `net` must be a live network handle; `out` must be valid for writes.
 */
enum EgsStatus egs_network_to_json(const struct EgsNetwork *net, char **out);

/**
 * The realized graph as `{"num_nodes", "edges", "name"}` JSON.
 *
 * # Safety
 * `net` must be a live network handle; `out` must be valid for writes.
 */
enum EgsStatus egs_network_egraph_json(const struct EgsNetwork *net, char **out);

/**
 * Outcome table for swapping links with smaller Schmidt coefficients
 * `lambda2_a` and `lambda2_b`, in the order PsiPlus, PsiMinus, PhiPlus, PhiMinus.
 *
 * # Safety
 * `out` must be valid for 4 writes.
 */
enum EgsStatus egs_swap_outcomes(double lambda2_a, double lambda2_b, struct EgsBellOutcome *out);

/**
 * Outcome-averaged concurrence after a swap.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum EgsStatus egs_average_scp(double lambda2_a, double lambda2_b, double *out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum EgsStatus egs_formula_ring(uint64_t nodes, uint64_t *out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum EgsStatus egs_formula_lattice(uint64_t side, uint64_t *out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum EgsStatus egs_formula_complete(uint64_t nodes, uint64_t *out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum EgsStatus egs_formula_hierarchical(uint64_t nodes, uint64_t *out);

/**
 * Average links per complete-graph edge as a reduced fraction.
 *
 * # Safety
 * `numer` and `denom` must be valid for writes.
 */
enum EgsStatus egs_avg_links_per_edge(uint64_t nodes, uint64_t *numer, uint64_t *denom);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EGRAPHSIM_H */
