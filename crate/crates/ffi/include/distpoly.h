#ifndef DISTPOLY_H
#define DISTPOLY_H

#pragma once

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum DpFamily {
  DP_FAMILY_ROSE = 0,
  DP_FAMILY_DIPOLE = 1,
} DpFamily;

// Result of every fallible call.
typedef enum DpStatus {
  DP_STATUS_OK = 0,
  DP_STATUS_NULL_POINTER = 1,
  DP_STATUS_INVALID_UTF8 = 2,
  // Malformed scenario, distribution or argument text.
  DP_STATUS_PARSE = 3,
  // Well-formed input that violates a precondition (infeasible point,
  // unknown edge, cyclic edge set, ...).
  DP_STATUS_INVALID_INPUT = 4,
  // The operation needs a dipole or rose scenario.
  DP_STATUS_WRONG_SHAPE = 5,
  DP_STATUS_BUDGET_EXCEEDED = 6,
  DP_STATUS_IO = 7,
  // A count does not fit the output type.
  DP_STATUS_OVERFLOW = 8,
  DP_STATUS_PANIC = 9,
} DpStatus;

// Opaque distribution handle; remembers the scenario it was parsed against.
typedef struct DpDistribution DpDistribution;

// Opaque scenario handle.
typedef struct DpScenario DpScenario;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version, a static NUL-terminated string.
const char *dp_version(void);

// Message for the last failed call on this thread, or NULL. Valid until the
// next call into the library on this thread.
const char *dp_last_error(void);

// # Safety
// `s` must be NULL or a string returned by this library, not yet freed.
void dp_string_free(char *s);

// Parses scenario text (the `.scn` format).
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum DpStatus dp_scenario_parse(const char *text, struct DpScenario **out_scenario);

// Reads a scenario file.
//
// # Safety
// `path` must be a NUL-terminated string; `out` must be writable.
enum DpStatus dp_scenario_load(const char *path, struct DpScenario **out_scenario);

// # Safety
// `s` must be NULL or a handle from this library, not yet freed.
void dp_scenario_free(struct DpScenario *s);

// Node count, edge count and outcome count. Any output may be NULL.
//
// # Safety
// `s` must be a live handle; non-NULL outputs must be writable.
enum DpStatus dp_scenario_info(const struct DpScenario *s,
                               size_t *out_nodes,
                               size_t *out_edges,
                               size_t *out_outcomes);

// Canonical scenario text; free with [`dp_string_free`].
//
// # Safety
// `s` must be a live handle; `out_text` must be writable.
enum DpStatus dp_scenario_to_string(const struct DpScenario *s, char **out_text);

// Number of vertices of Dist(X, m), by double description.
//
// # Safety
// `s` must be a live handle; `out_count` must be writable.
enum DpStatus dp_vertex_count(const struct DpScenario *s, size_t *out_count);

// Spanning trees of the underlying multigraph, as a decimal string; free
// with [`dp_string_free`].
//
// # Safety
// `s` must be a live handle; `out_text` must be writable.
enum DpStatus dp_spanning_tree_count(const struct DpScenario *s, char **out_text);

// Contracts the comma-separated edges `edges`. With `allow_cycles`, edges
// whose endpoints are already identified are contracted too.
//
// # Safety
// `s` must be a live handle, `edges` a NUL-terminated string and `out_quotient` writable.
enum DpStatus dp_collapse(const struct DpScenario *s,
                          const char *edges,
                          bool allow_cycles,
                          struct DpScenario **out_quotient);

// Parses distribution text against a scenario.
//
// # Safety
// `s` must be a live handle, `text` a NUL-terminated string and `out_dist` writable.
enum DpStatus dp_distribution_parse(const struct DpScenario *s,
                                    const char *text,
                                    struct DpDistribution **out_dist);

// Reads a distribution file against a scenario.
//
// # Safety
// `s` must be a live handle, `path` a NUL-terminated string and `out_dist` writable.
enum DpStatus dp_distribution_load(const struct DpScenario *s,
                                   const char *path,
                                   struct DpDistribution **out_dist);

// # Safety
// `d` must be NULL or a handle from this library, not yet freed.
void dp_distribution_free(struct DpDistribution *d);

// Canonical distribution text; free with [`dp_string_free`].
//
// # Safety
// `d` must be a live handle; `out_text` must be writable.
enum DpStatus dp_distribution_to_string(const struct DpDistribution *d, char **out_text);

// Direct vertex test: the support columns are linearly independent.
//
// # Safety
// `d` must be a live handle; `out_vertex` must be writable.
enum DpStatus dp_is_vertex(const struct DpDistribution *d, bool *out_vertex);

// Acyclicity and rank test on a dipole or rose. `out_rank` may be NULL.
//
// # Safety
// `d` must be a live handle; `out_vertex` must be writable.
enum DpStatus dp_criterion_is_vertex(const struct DpDistribution *d,
                                     bool *out_vertex,
                                     size_t *out_rank);

// Whether the distribution is not a mixture of deterministic ones.
//
// # Safety
// `d` must be a live handle; `out_contextual` must be writable.
enum DpStatus dp_is_contextual(const struct DpDistribution *d, bool *out_contextual);

// Vertex count of Dist(R_n, m) or Dist(D_n, m); with `tilde`, the count of
// contextual vertices without collapsed edges. `budget` caps the forest
// search, 0 for the default.
//
// # Safety
// `out_count` must be writable.
enum DpStatus dp_count(enum DpFamily family,
                       size_t n,
                       size_t m,
                       bool tilde,
                       uint64_t budget,
                       uint64_t *out_count);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DISTPOLY_H */
