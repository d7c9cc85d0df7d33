#ifndef RECONFIG_H
#define RECONFIG_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum RcRule {
  RC_RULE_TOKEN_JUMPING = 0,
  RC_RULE_TOKEN_SLIDING = 1,
} RcRule;

typedef enum RcStatus {
  RC_STATUS_OK = 0,
  RC_STATUS_NULL_POINTER = 1,
  RC_STATUS_INVALID_INPUT = 2,
  RC_STATUS_PRECONDITION = 3,
  RC_STATUS_CAPPED = 4,
  RC_STATUS_IO = 5,
  RC_STATUS_PANIC = 6,
} RcStatus;

// Opaque graph handle.
typedef struct RcGraph RcGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL. Valid until the
// next failing call on the same thread.
const char *rc_last_error_message(void);

void rc_string_free(char *s);

enum RcStatus rc_graph_new(size_t n, struct RcGraph **out);

void rc_graph_free(struct RcGraph *g);

enum RcStatus rc_graph_add_edge(struct RcGraph *g, size_t u, size_t v);

enum RcStatus rc_graph_vertex_count(const struct RcGraph *g, size_t *out);

enum RcStatus rc_graph_edge_count(const struct RcGraph *g, size_t *out);

enum RcStatus rc_graph_has_edge(const struct RcGraph *g, size_t u, size_t v, bool *out);

// Parses edge-list or graph6 text (detected).
enum RcStatus rc_graph_parse(const char *text, struct RcGraph **out);

enum RcStatus rc_graph_read(const char *path, struct RcGraph **out);

// Writes the canonical edge list (or graph6 when `graph6` is true).
enum RcStatus rc_graph_write(const struct RcGraph *g, const char *path, bool graph6);

enum RcStatus rc_graph_to_edge_list(const struct RcGraph *g, char **out);

enum RcStatus rc_graph_complement(const struct RcGraph *g, struct RcGraph **out);

enum RcStatus rc_is_independent(const struct RcGraph *g,
                                const size_t *vertices,
                                size_t len,
                                bool *out);

// Exact independence number; refuses graphs above `limit` vertices
// (0 for the library default).
enum RcStatus rc_independence_number(const struct RcGraph *g, size_t limit, size_t *out);

// Distance between two independent k-sets in R_k; -1 when unreachable.
// `cap` of 0 means the default node cap.
enum RcStatus rc_distance(const struct RcGraph *g,
                          const size_t *from,
                          const size_t *to,
                          size_t k,
                          enum RcRule rule,
                          size_t cap,
                          int64_t *out);

// Largest component diameter of R_k as a JSON report.
enum RcStatus rc_max_diameter_json(const struct RcGraph *g,
                                   size_t k,
                                   enum RcRule rule,
                                   size_t cap,
                                   char **out);

// Whether the independent pair `from` reaches `to` (two vertices each).
enum RcStatus rc_decide_k2(const struct RcGraph *g,
                           const size_t *from,
                           const size_t *to,
                           bool *out);

// Builds a named construction. `kind` is one of `comp-path {n}`,
// `circulant {p, s}`, `k3 {budget}`, `toll {base, steps, booths}`,
// `triple {base, p}`, `general {k, budget}`; `params` is a JSON object.
// On success `out_graph` receives the graph and `out_report` its JSON report.
enum RcStatus rc_construct(const char *kind,
                           const char *params,
                           size_t cap,
                           struct RcGraph **out_graph,
                           char **out_report);

// Best available 3-AP-free subset of `[1, n]` as a JSON array.
enum RcStatus rc_apset_json(uint64_t n, uint64_t exact_limit, char **out);

// Library version as a static string.
const char *rc_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RECONFIG_H */
