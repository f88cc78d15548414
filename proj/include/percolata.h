/* C interface to the percolata core. All results are returned as JSON text
 * allocated by the library; release them with pct_string_free. Functions
 * return PCT_OK on success; on any failure the output pointer is left null
 * and pct_last_error() carries a thread-local message. */
#ifndef PERCOLATA_H
#define PERCOLATA_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pct_status {
  PCT_OK = 0,
  PCT_ARGUMENT = 1,     /* bad arguments or out-of-range parameters */
  PCT_RESOURCE = 2,     /* a configured budget was exceeded */
  PCT_INVARIANT = 3,    /* a hard invariant failed (a bug, not a data issue) */
  PCT_INCONCLUSIVE = 4, /* finished without a usable answer */
  PCT_INTERNAL = 5      /* anything else */
} pct_status;

/* Library version, static storage. */
const char* pct_version(void);

/* Message for the most recent failure on this thread; static storage. */
const char* pct_last_error(void);

/* Releases any string returned through a char** out parameter. */
void pct_string_free(char* s);

/* Opaque handle for a sampling window: the induced ball of the given radius
 * around the origin of the product graph described by `spec` (for example
 * "inf,inf,6" for Z^2 x Z/6). */
typedef struct pct_graph pct_graph;

pct_status pct_graph_create(const char* spec, int radius, pct_graph** out);
void pct_graph_free(pct_graph* g);

/* Vertex/edge/boundary counts and degree data for the window. */
pct_status pct_graph_info(const pct_graph* g, char** out_json);

/* Largest radius <= r_max at which the rooted balls of the two graphs are
 * isomorphic. */
pct_status pct_locality_radius(const char* spec_a, const char* spec_b,
                               int r_max, char** out_json);

/* Monte Carlo estimate of P_p(origin <-> window boundary). */
pct_status pct_theta(const char* spec, double p, int r_w, long long samples,
                     unsigned long long seed, char** out_json);

/* Truncated two-point estimates from the origin to axis vertices at each
 * listed distance, all sharing the sampled configurations. */
pct_status pct_two_point(const char* spec, double p, const int* distances,
                         int n_distances, int r_w, long long samples,
                         unsigned long long seed, char** out_json);

/* P_p(k < |C_o| < infinity) for each threshold, plus the stretch-exponent
 * fit over log(-log tail) against log k. */
pct_status pct_tail(const char* spec, double p, const long long* ks, int n_ks,
                    int r_w, long long samples, unsigned long long seed,
                    char** out_json);

/* Inclusion-minimal cutsets separating the origin from the window boundary.
 * kind is "vertex" or "bond"; the report carries the coarse-connectivity
 * constant over the uncensored cutsets. */
pct_status pct_cutsets(const pct_graph* g, const char* kind, int max_size,
                       char** out_json);

/* Candidate interfaces up to max_size members at scale N with connectivity
 * parameter t. */
pct_status pct_interfaces(const pct_graph* g, int big_n, int t, int max_size,
                          char** out_json);

/* Truncated series for 1 - theta at the complex parameter z_re + i z_im,
 * with per-term magnitudes and envelope data around p0 with radius r. Exact;
 * the window must fit the brute-force edge cap. */
pct_status pct_series(const pct_graph* g, int big_n, int t, int n_max,
                      double z_re, double z_im, double p0, double r,
                      char** out_json);

/* Exact event polynomial over the window (edge cap 22) and evaluations at
 * the given parameters. event is "connect" (origin reaches the boundary),
 * "two-point" (origin and the axis vertex at `distance` share a cluster that
 * avoids the boundary), or "interface-ie" (the inclusion-exclusion audit;
 * `distance` is ignored). */
pct_status pct_oracle(const pct_graph* g, const char* event, int distance,
                      const double* ps, int n_ps, char** out_json);

/* Runs acceptance criteria (all of them when ids is null or n_ids is 0) and
 * reports one record per criterion. */
pct_status pct_accept(const int* ids, int n_ids, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* PERCOLATA_H */
