#include "percolata/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "percolata/errors.hpp"
#include "percolata/parallel.hpp"
#include "percolata/rng.hpp"

namespace percolata {

void Configuration::set_edge(int e, bool open_state) {
  open[e] = open_state ? 1 : 0;
  uniforms[e] = open_state ? 0.0 : 1.0;
}

Configuration sample_configuration(const Window& window, double p,
                                   std::uint64_t seed, std::uint64_t sample) {
  if (p < 0.0 || p > 1.0) throw ArgumentError("p must lie in [0, 1]");
  Configuration c;
  c.window = &window;
  c.p = p;
  c.seed = seed;
  c.sample = sample;
  const int m = window.num_edges();
  c.uniforms.resize(m);
  c.open.resize(m);
  const std::uint64_t base = sample_base(seed, sample);
  for (int e = 0; e < m; ++e) {
    c.uniforms[e] = bits_to_unit(edge_bits(base, window.edge_keys[e]));
    c.open[e] = c.uniforms[e] < p ? 1 : 0;
  }
  return c;
}

Configuration all_open_configuration(const Window& window) {
  Configuration c;
  c.window = &window;
  c.p = 1.0;
  c.uniforms.assign(window.num_edges(), 0.0);
  c.open.assign(window.num_edges(), 1);
  return c;
}

Configuration all_closed_configuration(const Window& window) {
  Configuration c;
  c.window = &window;
  c.p = 0.0;
  c.uniforms.assign(window.num_edges(), 1.0);
  c.open.assign(window.num_edges(), 0);
  return c;
}

Configuration configuration_from_mask(const Window& window,
                                      std::uint64_t mask) {
  if (window.num_edges() > 64) {
    throw ArgumentError("configuration_from_mask: window has more than 64 edges");
  }
  Configuration c = all_closed_configuration(window);
  for (int e = 0; e < window.num_edges(); ++e) {
    if (mask >> e & 1) c.set_edge(e, true);
  }
  c.p = 0.5;  // immaterial; edge states are pinned
  return c;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[b] = a;
  }
};

/// Extrinsic diameter of a vertex set: exact pair scan below the size limit,
/// otherwise the best per-factor pair distance (a lower bound).
int set_diameter(const Window& w, const std::vector<int>& members,
                 bool* exact) {
  const auto n = members.size();
  if (n <= 1) {
    *exact = true;
    return 0;
  }
  if (n < static_cast<std::size_t>(kExactDiameterLimit)) {
    int best = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        best = std::max(best, w.distance(members[i], members[j]));
      }
    }
    *exact = true;
    return best;
  }
  // Per factor, the largest single-factor distance over member pairs; the
  // overall max is realized by an actual pair, hence a valid lower bound.
  *exact = false;
  int best = 0;
  for (int f = 0; f < w.spec.num_factors(); ++f) {
    const int size = w.spec.factors[f];
    if (size == kInfiniteFactor) {
      std::int32_t lo = w.coords[members[0]][f], hi = lo;
      for (int v : members) {
        lo = std::min(lo, w.coords[v][f]);
        hi = std::max(hi, w.coords[v][f]);
      }
      best = std::max(best, static_cast<int>(hi - lo));
    } else {
      std::vector<char> present(size, 0);
      for (int v : members) present[w.coords[v][f]] = 1;
      for (std::int32_t a = 0; a < size; ++a) {
        if (!present[a]) continue;
        for (std::int32_t b = a + 1; b < size; ++b) {
          if (present[b]) best = std::max(best, factor_distance(size, a, b));
        }
      }
    }
  }
  return best;
}

}  // namespace

ClusterLabeling label_clusters(const Configuration& config) {
  const Window& w = *config.window;
  const int n = w.num_vertices();
  UnionFind uf(n);
  for (int e = 0; e < w.num_edges(); ++e) {
    if (config.open[e]) uf.unite(w.edges[e].first, w.edges[e].second);
  }
  ClusterLabeling out;
  out.cluster.assign(n, -1);
  std::vector<int> root_to_id(n, -1);
  for (int v = 0; v < n; ++v) {
    int r = uf.find(v);
    if (root_to_id[r] < 0) {
      root_to_id[r] = out.num_clusters();
      out.size.push_back(0);
      out.touches_boundary.push_back(0);
    }
    out.cluster[v] = root_to_id[r];
    ++out.size[out.cluster[v]];
    if (w.on_boundary[v]) out.touches_boundary[out.cluster[v]] = 1;
  }
  std::vector<std::vector<int>> members(out.num_clusters());
  for (int v = 0; v < n; ++v) members[out.cluster[v]].push_back(v);
  out.diameter.resize(out.num_clusters());
  out.diameter_exact.resize(out.num_clusters());
  for (int c = 0; c < out.num_clusters(); ++c) {
    bool exact = false;
    out.diameter[c] = set_diameter(w, members[c], &exact);
    out.diameter_exact[c] = exact ? 1 : 0;
  }
  return out;
}

EstimateWithError make_estimate(std::int64_t successes, std::int64_t samples,
                                std::uint64_t seed) {
  if (samples < 1) throw ArgumentError("samples must be >= 1");
  EstimateWithError e;
  e.samples = samples;
  e.successes = successes;
  e.seed = seed;
  const double phat = static_cast<double>(successes) / samples;
  e.estimate = phat;
  e.std_error = std::sqrt(phat * (1.0 - phat) / samples);
  e.upper95 = successes == 0 ? 1.0 - std::pow(0.05, 1.0 / samples)
                             : std::min(1.0, phat + 1.6449 * e.std_error);
  return e;
}

namespace {

/// Per-worker scratch for repeated origin-cluster growth over one window.
struct Growth {
  std::vector<std::int64_t> stamp;
  std::vector<int> queue;  // every visited vertex, i.e. the cluster if finite
  std::vector<int> stack;
  std::int64_t current = 0;

  void reset(int n) {
    if (stamp.size() != static_cast<std::size_t>(n)) stamp.assign(n, 0);
  }

  /// Grows the open cluster of `start`. Returns true when the cluster
  /// touches the window boundary (growth stops there); otherwise the whole
  /// cluster ends up in `queue`. Exploration is depth-first and prefers
  /// neighbors farther from the origin, so boundary-touching clusters are
  /// detected after visiting roughly one escape path rather than the whole
  /// cluster; finite clusters are still explored in full.
  bool grow(const Window& w, std::uint64_t base, std::uint64_t threshold,
            int start) {
    ++current;
    queue.clear();
    stack.clear();
    queue.push_back(start);
    stamp[start] = current;
    if (w.on_boundary[start]) return true;
    stack.push_back(start);
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      const std::size_t first = stack.size();
      for (int i = w.adj_offset[v]; i < w.adj_offset[v + 1]; ++i) {
        const int u = w.adj_vertex[i];
        if (stamp[u] == current) continue;
        if (!edge_open(base, w.edge_keys[w.adj_edge[i]], threshold)) continue;
        stamp[u] = current;
        queue.push_back(u);
        if (w.on_boundary[u]) return true;
        stack.push_back(u);
      }
      // Order the freshly pushed vertices so the one farthest from the
      // origin sits on top of the stack (degree <= 6: insertion sort).
      for (std::size_t i = first + 1; i < stack.size(); ++i) {
        const int x = stack[i];
        std::size_t j = i;
        while (j > first && w.dist[stack[j - 1]] > w.dist[x]) {
          stack[j] = stack[j - 1];
          --j;
        }
        stack[j] = x;
      }
    }
    return false;
  }

  bool contains(int v) const { return stamp[v] == current; }
};

}  // namespace

EstimateWithError connection_estimate(const GraphSpec& spec, double p, int r_w,
                                      std::int64_t samples,
                                      std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw ArgumentError("p must lie in [0, 1]");
  if (samples < 1) throw ArgumentError("samples must be >= 1");
  const Window w = ball(spec, r_w);
  const std::uint64_t threshold = open_threshold(p);
  std::vector<std::int64_t> hits(worker_count(), 0);
  parallel_ranges(samples, [&](int worker, std::int64_t begin,
                               std::int64_t end) {
    Growth g;
    g.reset(w.num_vertices());
    std::int64_t local = 0;
    for (std::int64_t s = begin; s < end; ++s) {
      if (g.grow(w, sample_base(seed, static_cast<std::uint64_t>(s)), threshold,
                 0)) {
        ++local;
      }
    }
    hits[worker] = local;
  });
  return make_estimate(std::accumulate(hits.begin(), hits.end(), std::int64_t{0}),
                       samples, seed);
}

EstimateWithError truncated_two_point(const GraphSpec& spec, double p,
                                      const Coord& u, const Coord& v, int r_w,
                                      std::int64_t samples,
                                      std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw ArgumentError("p must lie in [0, 1]");
  if (samples < 1) throw ArgumentError("samples must be >= 1");
  const Window w = ball(spec, r_w);
  const int ui = w.index_of(u);
  const int vi = w.index_of(v);
  if (ui < 0 || vi < 0) throw ArgumentError("u and v must lie in the window");
  const int d = ambient_distance(spec, u, v);
  const Coord origin(spec.num_factors(), 0);
  const int margin = r_w - std::max(ambient_distance(spec, u, origin),
                                    ambient_distance(spec, v, origin));
  if (margin <= d) {
    throw ArgumentError(
        "u, v must be interior: boundary margin must exceed d(u, v)");
  }
  const std::uint64_t threshold = open_threshold(p);
  std::vector<std::int64_t> hits(worker_count(), 0);
  parallel_ranges(samples, [&](int worker, std::int64_t begin,
                               std::int64_t end) {
    Growth g;
    g.reset(w.num_vertices());
    std::int64_t local = 0;
    for (std::int64_t s = begin; s < end; ++s) {
      const bool infinite = g.grow(
          w, sample_base(seed, static_cast<std::uint64_t>(s)), threshold, ui);
      if (!infinite && g.contains(vi)) ++local;
    }
    hits[worker] = local;
  });
  return make_estimate(std::accumulate(hits.begin(), hits.end(), std::int64_t{0}),
                       samples, seed);
}

std::vector<EstimateWithError> two_point_profile(
    const GraphSpec& spec, double p, const std::vector<int>& distances, int r_w,
    std::int64_t samples, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw ArgumentError("p must lie in [0, 1]");
  if (samples < 1) throw ArgumentError("samples must be >= 1");
  auto axis = spec.first_infinite_factor();
  if (!axis) throw ArgumentError("spec needs an infinite factor for the axis");
  const Window w = ball(spec, r_w);
  std::vector<int> targets;
  for (int d : distances) {
    if (d < 0 || r_w - d <= d) {
      throw ArgumentError("distance " + std::to_string(d) +
                          " too large for window radius " + std::to_string(r_w));
    }
    Coord c(spec.num_factors(), 0);
    c[*axis] = d;
    targets.push_back(w.index_of(c));
  }
  const std::uint64_t threshold = open_threshold(p);
  const int k = static_cast<int>(distances.size());
  std::vector<std::vector<std::int64_t>> hits(worker_count(),
                                              std::vector<std::int64_t>(k, 0));
  parallel_ranges(samples, [&](int worker, std::int64_t begin,
                               std::int64_t end) {
    Growth g;
    g.reset(w.num_vertices());
    auto& local = hits[worker];
    for (std::int64_t s = begin; s < end; ++s) {
      const bool infinite = g.grow(
          w, sample_base(seed, static_cast<std::uint64_t>(s)), threshold, 0);
      if (infinite) continue;
      for (int i = 0; i < k; ++i) {
        if (g.contains(targets[i])) ++local[i];
      }
    }
  });
  std::vector<EstimateWithError> out;
  for (int i = 0; i < k; ++i) {
    std::int64_t total = 0;
    for (const auto& h : hits) total += h[i];
    out.push_back(make_estimate(total, samples, seed));
  }
  return out;
}

std::vector<EstimateWithError> cluster_tail_curve(
    const GraphSpec& spec, double p, const std::vector<std::int64_t>& ks,
    int r_w, std::int64_t samples, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw ArgumentError("p must lie in [0, 1]");
  if (samples < 1) throw ArgumentError("samples must be >= 1");
  for (auto k : ks) {
    if (k < 0) throw ArgumentError("thresholds must be >= 0");
  }
  const Window w = ball(spec, r_w);
  const std::uint64_t threshold = open_threshold(p);
  const int nk = static_cast<int>(ks.size());
  std::vector<std::vector<std::int64_t>> hits(worker_count(),
                                              std::vector<std::int64_t>(nk, 0));
  parallel_ranges(samples, [&](int worker, std::int64_t begin,
                               std::int64_t end) {
    Growth g;
    g.reset(w.num_vertices());
    auto& local = hits[worker];
    for (std::int64_t s = begin; s < end; ++s) {
      const bool infinite = g.grow(
          w, sample_base(seed, static_cast<std::uint64_t>(s)), threshold, 0);
      if (infinite) continue;
      const auto size = static_cast<std::int64_t>(g.queue.size());
      for (int i = 0; i < nk; ++i) {
        if (size > ks[i]) ++local[i];
      }
    }
  });
  std::vector<EstimateWithError> out;
  for (int i = 0; i < nk; ++i) {
    std::int64_t total = 0;
    for (const auto& h : hits) total += h[i];
    out.push_back(make_estimate(total, samples, seed));
  }
  return out;
}

EstimateWithError cluster_tail_estimate(const GraphSpec& spec, double p,
                                        std::int64_t k, int r_w,
                                        std::int64_t samples,
                                        std::uint64_t seed) {
  return cluster_tail_curve(spec, p, {k}, r_w, samples, seed).front();
}

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  LineFit fit;
  fit.points = static_cast<int>(xs.size());
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw ArgumentError("fit_line needs at least two (x, y) pairs");
  }
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
    syy += ys[i] * ys[i];
  }
  const double vx = sxx - sx * sx / n;
  const double vy = syy - sy * sy / n;
  const double cxy = sxy - sx * sy / n;
  if (vx == 0.0) throw ArgumentError("fit_line: degenerate x values");
  fit.slope = cxy / vx;
  fit.intercept = (sy - fit.slope * sx) / n;
  fit.r_squared = vy == 0.0 ? 1.0 : (cxy * cxy) / (vx * vy);
  return fit;
}

TailFit fit_stretch_exponent(const std::vector<std::int64_t>& ks,
                             const std::vector<EstimateWithError>& tail) {
  if (ks.size() != tail.size()) {
    throw ArgumentError("fit_stretch_exponent: mismatched lengths");
  }
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (tail[i].successes == 0 || tail[i].estimate >= 1.0) continue;
    xs.push_back(std::log(static_cast<double>(ks[i])));
    ys.push_back(std::log(-std::log(tail[i].estimate)));
  }
  TailFit out;
  out.points = static_cast<int>(xs.size());
  if (xs.size() < 3) return out;  // ok stays false
  const LineFit line = fit_line(xs, ys);
  out.exponent = line.slope;
  out.r_squared = line.r_squared;
  out.ok = true;
  return out;
}

namespace {

/// Window-local ball/sphere machinery shared by the goodness events. With
/// `local` set, window-boundary vertices inside B_r(z) count as sphere
/// vertices, standing for "far away" where the true sphere is clipped; in
/// strict mode clipping raises ArgumentError instead.
struct Region {
  const Window& w;
  const Configuration& config;
  bool local;

  Region(const Configuration& c, bool local_mode)
      : w(*c.window), config(c), local(local_mode) {}

  void require_margin(int z, int r) const {
    if (!local && w.dist[z] + r > w.radius) {
      throw ArgumentError("ball of radius " + std::to_string(r) +
                          " around the vertex leaves the window (needs window radius >= " +
                          std::to_string(w.dist[z] + r) + ")");
    }
  }

  bool in_sphere(int z, int v, int r) const {
    const int d = w.distance(z, v);
    if (d == r) return true;
    return local && w.on_boundary[v] && d <= r;
  }
};

bool crossing_core(const Configuration& config, int z, int big_n, bool local) {
  if (big_n < 1) throw ArgumentError("N must be >= 1");
  const Region reg(config, local);
  const Window& w = *config.window;
  reg.require_margin(z, 10 * big_n);
  // BFS through open edges, vertices confined to B_{10N}(z); sources are all
  // of B_N(z), success on reaching the (possibly proxy) sphere S_{10N}(z).
  std::vector<char> seen(w.num_vertices(), 0);
  std::vector<int> queue;
  for (int v = 0; v < w.num_vertices(); ++v) {
    if (w.distance(z, v) <= big_n) {
      if (reg.in_sphere(z, v, 10 * big_n)) return true;
      seen[v] = 1;
      queue.push_back(v);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int v = queue[head];
    for (int i = w.adj_offset[v]; i < w.adj_offset[v + 1]; ++i) {
      const int u = w.adj_vertex[i];
      if (seen[u] || !config.open[w.adj_edge[i]]) continue;
      if (w.distance(z, u) > 10 * big_n) continue;
      if (reg.in_sphere(z, u, 10 * big_n)) return true;
      seen[u] = 1;
      queue.push_back(u);
    }
  }
  return false;
}

bool uniqueness_core(const Configuration& config, int x, int m, int n,
                     bool local) {
  if (m < 1 || n < m) throw ArgumentError("uniqueness needs n >= m >= 1");
  const Region reg(config, local);
  const Window& w = *config.window;
  reg.require_margin(x, n);
  // Union-find over open edges with both endpoints in B_n(x).
  std::vector<int> dist_x(w.num_vertices());
  for (int v = 0; v < w.num_vertices(); ++v) dist_x[v] = w.distance(x, v);
  UnionFind uf(w.num_vertices());
  for (int e = 0; e < w.num_edges(); ++e) {
    if (!config.open[e]) continue;
    const auto [a, b] = w.edges[e];
    if (dist_x[a] <= n && dist_x[b] <= n) uf.unite(a, b);
  }
  std::vector<int> qualifying;  // roots of clusters meeting both targets
  std::vector<char> meets_inner(w.num_vertices(), 0);
  std::vector<char> meets_sphere(w.num_vertices(), 0);
  for (int v = 0; v < w.num_vertices(); ++v) {
    if (dist_x[v] > n) continue;
    const int r = uf.find(v);
    if (dist_x[v] <= m) meets_inner[r] = 1;
    if (reg.in_sphere(x, v, n)) meets_sphere[r] = 1;
  }
  int count = 0;
  for (int v = 0; v < w.num_vertices(); ++v) {
    if (uf.find(v) == v && meets_inner[v] && meets_sphere[v]) ++count;
  }
  return count <= 1;
}

bool good_core(const Configuration& config, int x, int big_n, bool local) {
  const Window& w = *config.window;
  std::vector<int> zs{x};
  for (int i = w.adj_offset[x]; i < w.adj_offset[x + 1]; ++i) {
    zs.push_back(w.adj_vertex[i]);
  }
  if (!local) {
    // Vertices adjacent in the ambient graph but clipped by the window make
    // strict goodness undecidable.
    if (w.vertex_degree(x) < w.spec.degree()) {
      throw ArgumentError("vertex has window-clipped neighbors; strict goodness undecidable");
    }
  }
  for (int z : zs) {
    if (!crossing_core(config, z, big_n, local)) return false;
    if (!uniqueness_core(config, z, 2 * big_n, 5 * big_n, local)) return false;
  }
  return true;
}

}  // namespace

bool uniqueness_event(const Configuration& config, int x, int m, int n) {
  return uniqueness_core(config, x, m, n, false);
}

bool crossing_event(const Configuration& config, int z, int big_n) {
  return crossing_core(config, z, big_n, false);
}

bool is_good(const Configuration& config, int x, int big_n) {
  return good_core(config, x, big_n, false);
}

bool is_good_local(const Configuration& config, int x, int big_n) {
  return good_core(config, x, big_n, true);
}

std::vector<char> bad_vertex_mask(const Configuration& config, int big_n) {
  const Window& w = *config.window;
  const int n = w.num_vertices();
  // Site event at z, shared across the goodness of z and its neighbors.
  std::vector<char> site(n);
  for (int z = 0; z < n; ++z) {
    site[z] = (crossing_core(config, z, big_n, true) &&
               uniqueness_core(config, z, 2 * big_n, 5 * big_n, true))
                  ? 1
                  : 0;
  }
  std::vector<char> bad(n, 0);
  for (int x = 0; x < n; ++x) {
    bool good = site[x] != 0;
    for (int i = w.adj_offset[x]; good && i < w.adj_offset[x + 1]; ++i) {
      good = site[w.adj_vertex[i]] != 0;
    }
    bad[x] = good ? 0 : 1;
  }
  return bad;
}

}  // namespace percolata
