#include "percolata/graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <sstream>

#include "percolata/errors.hpp"
#include "percolata/rng.hpp"

namespace percolata {

GraphSpec GraphSpec::parse(const std::string& text) {
  GraphSpec spec;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    // trim
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) {
      throw ArgumentError("empty factor in spec '" + text + "'");
    }
    item = item.substr(b, e - b + 1);
    if (item == "inf" || item == "INF" || item == "Inf") {
      spec.factors.push_back(kInfiniteFactor);
    } else {
      char* end = nullptr;
      long n = std::strtol(item.c_str(), &end, 10);
      if (end == item.c_str() || *end != '\0') {
        throw ArgumentError("bad factor '" + item + "' in spec '" + text + "'");
      }
      if (n < 3) {
        throw ArgumentError("finite factor must be a cycle of length >= 3, got " +
                            item);
      }
      spec.factors.push_back(static_cast<int>(n));
    }
  }
  if (spec.factors.empty()) {
    throw ArgumentError("spec '" + text + "' has no factors");
  }
  return spec;
}

std::string GraphSpec::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) out += ',';
    out += factors[i] == kInfiniteFactor ? "inf" : std::to_string(factors[i]);
  }
  return out;
}

int GraphSpec::dimension() const {
  return static_cast<int>(
      std::count(factors.begin(), factors.end(), kInfiniteFactor));
}

std::optional<int> GraphSpec::first_infinite_factor() const {
  for (int i = 0; i < num_factors(); ++i) {
    if (factors[i] == kInfiniteFactor) return i;
  }
  return std::nullopt;
}

int factor_distance(int factor_size, std::int32_t a, std::int32_t b) {
  if (factor_size == kInfiniteFactor) {
    return static_cast<int>(a > b ? a - b : b - a);
  }
  int d = static_cast<int>(a > b ? a - b : b - a);
  return std::min(d, factor_size - d);
}

int ambient_distance(const GraphSpec& spec, const Coord& a, const Coord& b) {
  int total = 0;
  for (int i = 0; i < spec.num_factors(); ++i) {
    total += factor_distance(spec.factors[i], a[i], b[i]);
  }
  return total;
}

bool valid_vertex(const GraphSpec& spec, const Coord& v) {
  if (static_cast<int>(v.size()) != spec.num_factors()) return false;
  for (int i = 0; i < spec.num_factors(); ++i) {
    int n = spec.factors[i];
    if (n != kInfiniteFactor && (v[i] < 0 || v[i] >= n)) return false;
  }
  return true;
}

std::vector<Coord> neighbors(const GraphSpec& spec, const Coord& v) {
  if (!valid_vertex(spec, v)) {
    throw ArgumentError("vertex does not match spec " + spec.to_string());
  }
  std::vector<Coord> out;
  out.reserve(spec.degree());
  for (int i = 0; i < spec.num_factors(); ++i) {
    int n = spec.factors[i];
    for (int step : {+1, -1}) {
      Coord w = v;
      if (n == kInfiniteFactor) {
        w[i] += step;
      } else {
        w[i] = static_cast<std::int32_t>((w[i] + step + n) % n);
      }
      out.push_back(std::move(w));
    }
  }
  // Cycles of length < 3 would produce duplicates; the spec invariant n >= 3
  // guarantees distinctness, so no dedup here.
  return out;
}

std::size_t CoordHash::operator()(const Coord& c) const {
  return static_cast<std::size_t>(fold_key({c.data(), c.size()}));
}

int Ball::index_of(const Coord& c) const {
  auto it = index.find(c);
  return it == index.end() ? -1 : it->second;
}

std::vector<int> Ball::ball_around(int v, int r) const {
  // BFS over window adjacency; within the full r-ball of the ambient graph
  // window adjacency realizes ambient distances, and near the window edge the
  // clipped set is exactly {u in W : d_W(v,u) <= r} which we use as the
  // window-local ball.
  std::vector<int> out;
  std::vector<int> seen(num_vertices(), -1);
  std::deque<int> queue;
  seen[v] = 0;
  queue.push_back(v);
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    out.push_back(u);
    if (seen[u] == r) continue;
    for (int i = adj_offset[u]; i < adj_offset[u + 1]; ++i) {
      int w = adj_vertex[i];
      if (seen[w] < 0) {
        seen[w] = seen[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return out;
}

namespace {

std::uint64_t canonical_edge_key(const Coord& a, const Coord& b) {
  const Coord* lo = &a;
  const Coord* hi = &b;
  if (std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end())) {
    std::swap(lo, hi);
  }
  std::uint64_t h = fold_key({lo->data(), lo->size()});
  return mix64(h ^ fold_key({hi->data(), hi->size()}));
}

}  // namespace

Ball ball(const GraphSpec& spec, int radius, std::size_t vertex_budget) {
  if (radius < 0) throw ArgumentError("radius must be >= 0");
  Ball b;
  b.spec = spec;
  b.radius = radius;

  Coord origin(spec.num_factors(), 0);
  b.coords.push_back(origin);
  b.dist.push_back(0);
  b.index.emplace(origin, 0);

  // BFS layer by layer.
  for (std::size_t head = 0; head < b.coords.size(); ++head) {
    if (b.dist[head] == radius) continue;
    for (const Coord& w : neighbors(spec, b.coords[head])) {
      if (b.index.find(w) != b.index.end()) continue;
      if (b.coords.size() >= vertex_budget) {
        throw ResourceLimitError("ball(" + spec.to_string() + ", " +
                                 std::to_string(radius) +
                                 ") exceeds vertex budget " +
                                 std::to_string(vertex_budget));
      }
      b.index.emplace(w, static_cast<int>(b.coords.size()));
      b.coords.push_back(w);
      b.dist.push_back(b.dist[head] + 1);
    }
  }

  // Induced edges: for each vertex, all ambient neighbors present in the ball.
  const int n = b.num_vertices();
  std::vector<std::vector<std::pair<int, int>>> adj(n);  // (nbr, edge id)
  for (int v = 0; v < n; ++v) {
    for (const Coord& w : neighbors(spec, b.coords[v])) {
      int u = b.index_of(w);
      if (u < 0 || u <= v) continue;  // each edge once, from the smaller index
      int e = b.num_edges();
      b.edges.emplace_back(v, u);
      b.edge_keys.push_back(canonical_edge_key(b.coords[v], b.coords[u]));
      adj[v].emplace_back(u, e);
      adj[u].emplace_back(v, e);
    }
  }

  b.adj_offset.assign(n + 1, 0);
  for (int v = 0; v < n; ++v) {
    b.adj_offset[v + 1] = b.adj_offset[v] + static_cast<int>(adj[v].size());
  }
  b.adj_vertex.resize(b.adj_offset[n]);
  b.adj_edge.resize(b.adj_offset[n]);
  for (int v = 0; v < n; ++v) {
    int at = b.adj_offset[v];
    for (auto [u, e] : adj[v]) {
      b.adj_vertex[at] = u;
      b.adj_edge[at] = e;
      ++at;
    }
  }

  b.on_boundary.assign(n, 0);
  for (int v = 0; v < n; ++v) {
    if (b.dist[v] == radius && radius > 0) {
      b.on_boundary[v] = 1;
      b.boundary.push_back(v);
    }
  }
  return b;
}

namespace {

// Iterated invariant refinement: colors start from (distance label, degree)
// and are refined by sorted neighbor-color multisets until stable. A cheap
// isomorphism filter and a strong pruner for the backtracking search.
std::vector<int> refine_colors(const Ball& g) {
  const int n = g.num_vertices();
  std::vector<std::int64_t> code(n);
  for (int v = 0; v < n; ++v) {
    code[v] = static_cast<std::int64_t>(g.dist[v]) * 64 + g.vertex_degree(v);
  }
  std::vector<int> color(n);
  auto compress = [&](std::vector<std::int64_t>& c) {
    std::vector<std::int64_t> sorted = c;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int v = 0; v < n; ++v) {
      color[v] = static_cast<int>(
          std::lower_bound(sorted.begin(), sorted.end(), c[v]) -
          sorted.begin());
    }
    return static_cast<int>(sorted.size());
  };
  int classes = compress(code);
  for (int round = 0; round < n; ++round) {
    std::vector<std::int64_t> next(n);
    for (int v = 0; v < n; ++v) {
      std::vector<int> nbr;
      for (int i = g.adj_offset[v]; i < g.adj_offset[v + 1]; ++i) {
        nbr.push_back(color[g.adj_vertex[i]]);
      }
      std::sort(nbr.begin(), nbr.end());
      std::uint64_t h = mix64(static_cast<std::uint64_t>(color[v]) + 1);
      for (int c : nbr) h = mix64(h ^ (static_cast<std::uint64_t>(c) + 0x51ULL));
      next[v] = static_cast<std::int64_t>(h >> 1);
    }
    int new_classes = compress(next);
    if (new_classes == classes) break;
    classes = new_classes;
  }
  return color;
}

bool colors_compatible(const std::vector<int>& ca, const std::vector<int>& cb) {
  std::vector<int> sa = ca, sb = cb;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  return sa == sb;
}

struct IsoSearch {
  const Ball& a;
  const Ball& b;
  std::vector<int> color_a, color_b;
  std::vector<int> map_ab;  // a-index -> b-index or -1
  std::vector<int> map_ba;
  std::vector<std::vector<int>> b_by_color;

  bool feasible(int va, int vb) const {
    if (color_a[va] != color_b[vb]) return false;
    // All already-mapped neighbors must correspond both ways.
    for (int i = a.adj_offset[va]; i < a.adj_offset[va + 1]; ++i) {
      int wa = a.adj_vertex[i];
      int wb = map_ab[wa];
      if (wb >= 0 && !adjacent(b, vb, wb)) return false;
    }
    for (int i = b.adj_offset[vb]; i < b.adj_offset[vb + 1]; ++i) {
      int wb = b.adj_vertex[i];
      int wa = map_ba[wb];
      if (wa >= 0 && !adjacent(a, va, wa)) return false;
    }
    return true;
  }

  static bool adjacent(const Ball& g, int u, int v) {
    for (int i = g.adj_offset[u]; i < g.adj_offset[u + 1]; ++i) {
      if (g.adj_vertex[i] == v) return true;
    }
    return false;
  }

  bool extend(int next) {
    const int n = a.num_vertices();
    if (next == n) return true;
    // Pick the unmapped a-vertex with the most mapped neighbors (most
    // constrained first); fall back to BFS order.
    int best = -1, best_score = -1;
    for (int v = 0; v < n; ++v) {
      if (map_ab[v] >= 0) continue;
      int score = 0;
      for (int i = a.adj_offset[v]; i < a.adj_offset[v + 1]; ++i) {
        if (map_ab[a.adj_vertex[i]] >= 0) ++score;
      }
      if (score > best_score) {
        best_score = score;
        best = v;
      }
    }
    for (int vb : b_by_color[color_a[best]]) {
      if (map_ba[vb] >= 0) continue;
      if (!feasible(best, vb)) continue;
      map_ab[best] = vb;
      map_ba[vb] = best;
      if (extend(next + 1)) return true;
      map_ab[best] = -1;
      map_ba[vb] = -1;
    }
    return false;
  }
};

}  // namespace

bool rooted_ball_isomorphic(const Ball& a, const Ball& b) {
  if (a.radius != b.radius) {
    throw ArgumentError("rooted_ball_isomorphic: radius mismatch");
  }
  if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges()) {
    return false;
  }
  IsoSearch s{a, b, refine_colors(a), refine_colors(b), {}, {}, {}};
  if (!colors_compatible(s.color_a, s.color_b)) return false;
  // Roots must correspond; their refined colors must already agree.
  if (s.color_a[0] != s.color_b[0]) return false;
  const int n = a.num_vertices();
  int classes = 1 + *std::max_element(s.color_a.begin(), s.color_a.end());
  s.b_by_color.assign(classes, {});
  for (int v = 0; v < n; ++v) s.b_by_color[s.color_b[v]].push_back(v);
  s.map_ab.assign(n, -1);
  s.map_ba.assign(n, -1);
  s.map_ab[0] = 0;
  s.map_ba[0] = 0;
  return s.extend(1);
}

LocalityRadius locality_radius(const GraphSpec& a, const GraphSpec& b,
                               int r_max, std::size_t vertex_budget) {
  if (r_max < 0) throw ArgumentError("r_max must be >= 0");
  LocalityRadius result{0, false};
  // Radius-0 balls are single rooted vertices, always isomorphic.
  for (int r = 1; r <= r_max; ++r) {
    Ball ba, bb;
    try {
      ba = ball(a, r, vertex_budget);
      bb = ball(b, r, vertex_budget);
    } catch (const ResourceLimitError&) {
      throw ResourceLimitError("locality_radius: vertex budget exhausted at radius " +
                               std::to_string(r));
    }
    if (!rooted_ball_isomorphic(ba, bb)) {
      return result;
    }
    result.radius = r;
  }
  result.at_cap = (result.radius == r_max);
  return result;
}

}  // namespace percolata
