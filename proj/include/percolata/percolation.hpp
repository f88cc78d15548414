#pragma once

#include <cstdint>
#include <vector>

#include "percolata/graph.hpp"

namespace percolata {

/// A finite sampling window is a ball; vertices at distance exactly R_w stand
/// in for infinity.
using Window = Ball;

/// Edge states for one window, reproducible from (window, seed, sample, p).
struct Configuration {
  const Window* window = nullptr;
  double p = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t sample = 0;
  std::vector<double> uniforms;  // one per edge, from the counter-based stream
  std::vector<char> open;        // open[e] iff uniforms[e] < p

  bool is_open(int e) const { return open[e] != 0; }
  int num_edges() const { return static_cast<int>(open.size()); }
  /// Hand-edit for constructed scenarios; pins the uniform to 0 or 1 so the
  /// "open iff uniform < p" invariant keeps holding.
  void set_edge(int e, bool open_state);
};

Configuration sample_configuration(const Window& window, double p,
                                   std::uint64_t seed,
                                   std::uint64_t sample = 0);
Configuration all_open_configuration(const Window& window);
Configuration all_closed_configuration(const Window& window);
/// Edge e open iff bit e of mask is set (windows with <= 64 edges).
Configuration configuration_from_mask(const Window& window,
                                      std::uint64_t mask);

/// Union-find labeling of the open subgraph, with per-cluster size,
/// boundary-touch flag, and extrinsic (ambient-metric) diameter. Diameter is
/// exact for clusters below kExactDiameterLimit vertices; larger clusters
/// report the per-factor coordinate spread, a lower bound.
inline constexpr int kExactDiameterLimit = 512;

struct ClusterLabeling {
  std::vector<int> cluster;  // vertex -> cluster id, ids dense from 0
  std::vector<std::int64_t> size;
  std::vector<char> touches_boundary;
  std::vector<int> diameter;
  std::vector<char> diameter_exact;

  int num_clusters() const { return static_cast<int>(size.size()); }
  int cluster_of(int v) const { return cluster[v]; }
};

ClusterLabeling label_clusters(const Configuration& config);

/// Bernoulli tally with exact-binomial bookkeeping. For zero successes the
/// point estimate is 0 and upper95 carries the one-sided 95% bound
/// 1 - 0.05^(1/n).
struct EstimateWithError {
  double estimate = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
  std::int64_t successes = 0;
  std::uint64_t seed = 0;
  double upper95 = 1.0;
};

EstimateWithError make_estimate(std::int64_t successes, std::int64_t samples,
                                std::uint64_t seed);

/// P_p(o <-> S_{R_w}), the finite-volume stand-in for theta(p).
EstimateWithError connection_estimate(const GraphSpec& spec, double p, int r_w,
                                      std::int64_t samples,
                                      std::uint64_t seed);

/// P_p(u <-> v, their cluster stays off the window boundary). Both vertices
/// must be interior: distance to the boundary greater than d(u,v).
EstimateWithError truncated_two_point(const GraphSpec& spec, double p,
                                      const Coord& u, const Coord& v, int r_w,
                                      std::int64_t samples, std::uint64_t seed);

/// Truncated two-point from o to distance-d axis vertices for every d in
/// `distances`, all distances sharing each sampled configuration.
std::vector<EstimateWithError> two_point_profile(
    const GraphSpec& spec, double p, const std::vector<int>& distances, int r_w,
    std::int64_t samples, std::uint64_t seed);

/// P_p(k < |C_o| < infinity), boundary-touch standing for infinity.
EstimateWithError cluster_tail_estimate(const GraphSpec& spec, double p,
                                        std::int64_t k, int r_w,
                                        std::int64_t samples,
                                        std::uint64_t seed);

/// One pass, every threshold in `ks` tallied from the same samples.
std::vector<EstimateWithError> cluster_tail_curve(
    const GraphSpec& spec, double p, const std::vector<std::int64_t>& ks,
    int r_w, std::int64_t samples, std::uint64_t seed);

/// Least squares fit y = slope*x + intercept with R^2.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int points = 0;
};

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

/// Fits log(-log P(k < |C_o| < inf)) against log k; the slope estimates the
/// stretch exponent, to be compared with (d-1)/d. Thresholds with zero
/// successes are dropped; at least three surviving points are required.
struct TailFit {
  double exponent = 0.0;
  double r_squared = 0.0;
  int points = 0;
  bool ok = false;  // false when fewer than three usable points survive
};

TailFit fit_stretch_exponent(const std::vector<std::int64_t>& ks,
                             const std::vector<EstimateWithError>& tail);

/// U(m, n, x): at most one cluster of the restriction of the configuration to
/// B_n(x) meets both B_m(x) and S_n(x). Strict form: requires B_n(x) inside
/// the window (ArgumentError otherwise).
bool uniqueness_event(const Configuration& config, int x, int m, int n);

/// Open path from B_N(z) to S_{10N}(z) inside B_{10N}(z). Strict margins.
bool crossing_event(const Configuration& config, int z, int big_n);

/// N-good: for z = x and every neighbor z of x, crossing_event(z, N) and
/// uniqueness_event(z, 2N, 5N) both hold. Strict margins: B_{10N}(z) must be
/// inside the window for all such z.
bool is_good(const Configuration& config, int x, int big_n);

/// Window-local variant, defined for every window vertex: spheres S_r(z) are
/// taken as {v : d(z,v) = r} together with the window-boundary vertices of
/// B_r(z), so the window boundary counts as "far away" wherever the true
/// sphere is clipped. Coincides with is_good whenever the strict margins
/// hold.
bool is_good_local(const Configuration& config, int x, int big_n);

/// All window vertices that are N-bad in the window-local sense.
std::vector<char> bad_vertex_mask(const Configuration& config, int big_n);

}  // namespace percolata
