#include "percolata/cutsets.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "percolata/errors.hpp"

namespace percolata {

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
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

bool is_target(const Window& w, int t, int v) {
  return t == kSink ? w.on_boundary[v] != 0 : v == t;
}

/// Can u reach the target through the window minus the given members?
bool separated(const Window& w, int u, int t, const std::vector<char>& blocked_vertex,
               const std::vector<char>& blocked_edge, CutKind kind) {
  if (kind == CutKind::vertex && blocked_vertex[u]) {
    throw ArgumentError("source inside a vertex cutset");
  }
  std::vector<char> seen(w.num_vertices(), 0);
  std::vector<int> queue{u};
  seen[u] = 1;
  if (is_target(w, t, u)) return false;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int v = queue[head];
    for (int i = w.adj_offset[v]; i < w.adj_offset[v + 1]; ++i) {
      const int x = w.adj_vertex[i];
      if (seen[x]) continue;
      if (kind == CutKind::bond && blocked_edge[w.adj_edge[i]]) continue;
      if (kind == CutKind::vertex && blocked_vertex[x]) continue;
      if (is_target(w, t, x)) return false;
      seen[x] = 1;
      queue.push_back(x);
    }
  }
  return true;
}

int member_distance(const Window& w, CutKind kind, int a, int b) {
  if (kind == CutKind::vertex) return w.distance(a, b);
  const auto [a1, a2] = w.edges[a];
  const auto [b1, b2] = w.edges[b];
  return std::min(std::min(w.distance(a1, b1), w.distance(a1, b2)),
                  std::min(w.distance(a2, b1), w.distance(a2, b2)));
}

/// Least k making the member set k-connected: minimax merge distance.
int least_k_certificate(const Window& w, CutKind kind,
                        const std::vector<int>& members) {
  const int n = static_cast<int>(members.size());
  if (n <= 1) return 1;
  struct Pair {
    int d, i, j;
  };
  std::vector<Pair> pairs;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      pairs.push_back({member_distance(w, kind, members[i], members[j]), i, j});
    }
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const Pair& a, const Pair& b) { return a.d < b.d; });
  UnionFind uf(n);
  int merged = 1, k = 1;
  for (const Pair& pr : pairs) {
    if (uf.unite(pr.i, pr.j)) {
      k = std::max(k, pr.d);
      if (++merged == n) break;
    }
  }
  return std::max(k, 1);
}

bool member_touches_boundary(const Window& w, CutKind kind, int member) {
  if (kind == CutKind::vertex) return w.on_boundary[member] != 0;
  const auto [a, b] = w.edges[member];
  return w.on_boundary[a] || w.on_boundary[b];
}

/// Tiny unit-capacity max-flow (BFS augmentation), for separator size lower
/// bounds. Arc pairs are stored adjacently so arc^1 is the residual.
struct MaxFlow {
  std::vector<int> head, to, nxt;
  std::vector<int> cap;

  explicit MaxFlow(int nodes) : head(nodes, -1) {}

  void add_arc(int a, int b, int c) {
    to.push_back(b);
    cap.push_back(c);
    nxt.push_back(head[a]);
    head[a] = static_cast<int>(to.size()) - 1;
    to.push_back(a);
    cap.push_back(0);
    nxt.push_back(head[b]);
    head[b] = static_cast<int>(to.size()) - 1;
  }

  /// Max flow from src to snk, stopping once `limit` is reached.
  int run(int src, int snk, int limit) {
    int flow = 0;
    std::vector<int> parent_arc(head.size());
    while (flow < limit) {
      std::fill(parent_arc.begin(), parent_arc.end(), -1);
      std::vector<int> queue{src};
      parent_arc[src] = -2;
      bool reached = false;
      for (std::size_t h = 0; h < queue.size() && !reached; ++h) {
        const int v = queue[h];
        for (int a = head[v]; a >= 0; a = nxt[a]) {
          if (cap[a] <= 0 || parent_arc[to[a]] != -1) continue;
          parent_arc[to[a]] = a;
          if (to[a] == snk) {
            reached = true;
            break;
          }
          queue.push_back(to[a]);
        }
      }
      if (!reached) break;
      for (int v = snk; v != src;) {
        const int a = parent_arc[v];
        --cap[a];
        ++cap[a ^ 1];
        v = to[a ^ 1];
      }
      ++flow;
    }
    return flow;
  }
};

constexpr int kUncapped = 1 << 20;

}  // namespace

Cutset cutset_status(const Window& window, std::vector<int> members,
                     CutKind kind, int u, int t) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (kind == CutKind::vertex) {
    for (int v : members) {
      if (v == u || (t != kSink && v == t)) {
        throw ArgumentError("separation endpoints cannot be cutset members");
      }
    }
  }
  Cutset c;
  c.kind = kind;
  c.members = members;
  c.source = u;
  c.target = t;
  std::vector<char> bv(window.num_vertices(), 0);
  std::vector<char> be(window.num_edges(), 0);
  for (int m : members) (kind == CutKind::vertex ? bv[m] : be[m]) = 1;
  c.is_cutset = separated(window, u, t, bv, be, kind);
  c.is_minimal = c.is_cutset;
  for (std::size_t i = 0; c.is_minimal && i < members.size(); ++i) {
    (kind == CutKind::vertex ? bv[members[i]] : be[members[i]]) = 0;
    if (separated(window, u, t, bv, be, kind)) c.is_minimal = false;
    (kind == CutKind::vertex ? bv[members[i]] : be[members[i]]) = 1;
  }
  c.least_k = least_k_certificate(window, kind, members);
  c.touches_window_boundary = false;
  for (int m : members) {
    if (member_touches_boundary(window, kind, m)) {
      c.touches_window_boundary = true;
      break;
    }
  }
  return c;
}

namespace {

/// Shared state of the u-side component search. D grows one neighbor at a
/// time; excluded neighbors land in F and stay adjacent to D forever, so
/// |F| (vertex cuts) resp. the D-F edge count (bond cuts) is a monotone
/// lower bound on any completion and prunes the branch.
struct Enumerator {
  const Window& w;
  CutKind kind;
  int u, t, max_size;
  std::size_t budget;
  std::size_t nodes = 0;
  std::vector<char> in_d, in_f;
  std::vector<int> d_members;
  int df_edges = 0;  // edges between D and F (bond kind)
  std::set<std::vector<int>> seen;
  std::vector<Cutset>* out;

  Enumerator(const Window& win, CutKind k, int uu, int tt, int ms,
             std::size_t b, std::vector<Cutset>* o)
      : w(win),
        kind(k),
        u(uu),
        t(tt),
        max_size(ms),
        budget(b),
        in_d(win.num_vertices(), 0),
        in_f(win.num_vertices(), 0),
        out(o) {}

  bool can_join_d(int v) const {
    if (t == kSink) {
      // A u-side vertex on the window boundary would be wired straight to
      // the sink.
      return !w.on_boundary[v];
    }
    return v != t;
  }

  int pick_branch_vertex() const {
    for (int v : d_members) {
      for (int i = w.adj_offset[v]; i < w.adj_offset[v + 1]; ++i) {
        const int x = w.adj_vertex[i];
        if (!in_d[x] && !in_f[x]) return x;
      }
    }
    return -1;
  }

  int edges_to_d(int v) const {
    int count = 0;
    for (int i = w.adj_offset[v]; i < w.adj_offset[v + 1]; ++i) {
      if (in_d[w.adj_vertex[i]]) ++count;
    }
    return count;
  }

  int bound() const {
    if (kind == CutKind::vertex) {
      return static_cast<int>(std::count(in_f.begin(), in_f.end(), 1));
    }
    return df_edges;
  }

  /// Lower bound on what any completion adds beyond the committed members:
  /// disjoint D-to-target paths avoiding F each need one more member. Vertex
  /// kind counts vertex-disjoint paths (a concrete target is uncapped, since
  /// it can never be a member); bond kind counts edge-disjoint paths.
  int completion_flow(int limit) const {
    const int n = w.num_vertices();
    if (kind == CutKind::vertex) {
      const int src = 2 * n, snk = 2 * n + 1;
      MaxFlow mf(2 * n + 2);
      auto vin = [](int v) { return 2 * v; };
      auto vout = [](int v) { return 2 * v + 1; };
      for (int v = 0; v < n; ++v) {
        if (in_d[v] || in_f[v]) continue;
        mf.add_arc(vin(v), vout(v),
                   (t != kSink && v == t) ? kUncapped : 1);
        if (t == kSink ? w.on_boundary[v] != 0 : v == t) {
          mf.add_arc(vout(v), snk, kUncapped);
        }
        bool next_to_d = false;
        for (int i = w.adj_offset[v]; i < w.adj_offset[v + 1]; ++i) {
          next_to_d |= in_d[w.adj_vertex[i]] != 0;
        }
        if (next_to_d) mf.add_arc(src, vin(v), 1);
      }
      for (const auto& [a, b] : w.edges) {
        if (in_d[a] || in_f[a] || in_d[b] || in_f[b]) continue;
        mf.add_arc(vout(a), vin(b), 1);
        mf.add_arc(vout(b), vin(a), 1);
      }
      return mf.run(src, snk, limit);
    }
    const int src = n, snk = n + 1;
    MaxFlow mf(n + 2);
    for (int e = 0; e < w.num_edges(); ++e) {
      const auto [a, b] = w.edges[e];
      if (in_d[a] && in_d[b]) continue;
      if (in_d[a] != in_d[b]) {
        if (in_f[in_d[a] ? b : a]) continue;  // a committed cut edge
        mf.add_arc(src, in_d[a] ? b : a, 1);
      } else {
        mf.add_arc(a, b, 1);
        mf.add_arc(b, a, 1);
      }
    }
    for (int v = 0; v < n; ++v) {
      if (in_d[v]) continue;
      if (t == kSink ? w.on_boundary[v] != 0 : v == t) {
        mf.add_arc(v, snk, kUncapped);
      }
    }
    return mf.run(src, snk, limit);
  }

  void emit_leaf() {
    std::vector<int> members;
    if (kind == CutKind::vertex) {
      // No branchable neighbor left: N(D) = F exactly.
      for (int v = 0; v < w.num_vertices(); ++v) {
        if (in_f[v]) members.push_back(v);
      }
    } else {
      for (int e = 0; e < w.num_edges(); ++e) {
        const auto [a, b] = w.edges[e];
        if (in_d[a] != in_d[b]) members.push_back(e);
      }
    }
    if (members.empty() || static_cast<int>(members.size()) > max_size) return;
    if (!seen.insert(members).second) return;
    Cutset c = cutset_status(w, members, kind, u, t);
    if (c.is_cutset && c.is_minimal) out->push_back(std::move(c));
  }

  void search() {
    if (++nodes > budget) {
      throw ResourceLimitError("cutset enumeration budget exhausted after " +
                               std::to_string(out->size()) +
                               " minimal cutsets");
    }
    const int committed = bound();
    if (committed > max_size) return;
    if (committed + completion_flow(max_size + 1 - committed) > max_size) {
      return;
    }
    const int v = pick_branch_vertex();
    if (v < 0) {
      emit_leaf();
      return;
    }
    if (kind == CutKind::vertex && t != kSink && v == t) {
      // t is adjacent to D and can be neither absorbed nor made a member;
      // no completion of this branch separates the pair.
      return;
    }
    if (can_join_d(v)) {
      in_d[v] = 1;
      d_members.push_back(v);
      search();
      d_members.pop_back();
      in_d[v] = 0;
    }
    in_f[v] = 1;
    const int delta = kind == CutKind::bond ? edges_to_d(v) : 0;
    df_edges += delta;
    search();
    df_edges -= delta;
    in_f[v] = 0;
  }
};

std::vector<Cutset> enumerate_impl(const Window& window, CutKind kind, int u,
                                   int t, int max_size, std::size_t budget) {
  if (max_size < 1) throw ArgumentError("max_size must be >= 1");
  if (u < 0 || u >= window.num_vertices() || u == t) {
    throw ArgumentError("bad separation pair");
  }
  if (t != kSink && (t < 0 || t >= window.num_vertices())) {
    throw ArgumentError("bad separation target");
  }
  if (is_target(window, t, u)) {
    throw ArgumentError("source coincides with the target side");
  }
  std::vector<Cutset> out;
  Enumerator en(window, kind, u, t, max_size, budget, &out);
  if (!en.can_join_d(u)) {
    throw ArgumentError("source is wired to the boundary sink");
  }
  en.in_d[u] = 1;
  en.d_members.push_back(u);
  en.search();
  std::sort(out.begin(), out.end(), [](const Cutset& a, const Cutset& b) {
    return a.members < b.members;
  });
  return out;
}

}  // namespace

std::vector<Cutset> enumerate_minimal_cutsets(const Window& window, int u,
                                              int t, int max_size,
                                              std::size_t budget) {
  return enumerate_impl(window, CutKind::vertex, u, t, max_size, budget);
}

std::vector<Cutset> enumerate_minimal_bond_cutsets(const Window& window, int u,
                                                   int t, int max_size,
                                                   std::size_t budget) {
  return enumerate_impl(window, CutKind::bond, u, t, max_size, budget);
}

namespace {

int connectivity_impl(const Window& window, CutKind kind,
                      const std::vector<std::pair<int, int>>& pairs,
                      int max_size, std::size_t budget) {
  bool any = false;
  int worst = 0;
  for (const auto& [u, t] : pairs) {
    const auto cutsets = enumerate_impl(window, kind, u, t, max_size, budget);
    for (const Cutset& c : cutsets) {
      if (c.touches_window_boundary) continue;  // censored
      any = true;
      worst = std::max(worst, c.least_k);
    }
  }
  if (!any) {
    throw InconclusiveError(
        "every enumerated minimal cutset was censored by the window boundary");
  }
  return worst;
}

}  // namespace

int cut_connectivity(const Window& window,
                     const std::vector<std::pair<int, int>>& pairs,
                     int max_size, std::size_t budget) {
  return connectivity_impl(window, CutKind::vertex, pairs, max_size, budget);
}

int cut_connectivity_e(const Window& window,
                       const std::vector<std::pair<int, int>>& pairs,
                       int max_size, std::size_t budget) {
  return connectivity_impl(window, CutKind::bond, pairs, max_size, budget);
}

BoundaryReport boundaries(const Window& window, const std::vector<int>& A) {
  std::vector<char> in_a(window.num_vertices(), 0);
  for (int v : A) {
    if (v < 0 || v >= window.num_vertices()) throw ArgumentError("bad vertex id");
    if (window.on_boundary[v]) {
      throw ArgumentError("set touches the window boundary");
    }
    in_a[v] = 1;
  }
  // The outside: the component(s) of the complement reaching the window
  // boundary. Interior holes stay unmarked.
  std::vector<char> outside(window.num_vertices(), 0);
  std::vector<int> queue;
  for (int v : window.boundary) {
    outside[v] = 1;
    queue.push_back(v);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int v = queue[head];
    for (int i = window.adj_offset[v]; i < window.adj_offset[v + 1]; ++i) {
      const int x = window.adj_vertex[i];
      if (outside[x] || in_a[x]) continue;
      outside[x] = 1;
      queue.push_back(x);
    }
  }
  BoundaryReport rep;
  for (int v = 0; v < window.num_vertices(); ++v) {
    bool next_to_a = false, next_to_outside = false;
    for (int i = window.adj_offset[v]; i < window.adj_offset[v + 1]; ++i) {
      const int x = window.adj_vertex[i];
      next_to_a |= in_a[x] != 0;
      next_to_outside |= outside[x] != 0;
    }
    if (in_a[v] && next_to_outside) rep.exposed.push_back(v);
    if (outside[v] && next_to_a) rep.exterior_exposed.push_back(v);
  }
  for (int e = 0; e < window.num_edges(); ++e) {
    if (in_a[window.edges[e].first] != in_a[window.edges[e].second]) {
      rep.edge_boundary.push_back(e);
    }
  }
  const int d = std::max(window.spec.dimension(), 1);
  rep.iso_ratio = A.empty() ? 0.0
                            : static_cast<double>(rep.exposed.size()) /
                                  std::pow(static_cast<double>(A.size()),
                                           (d - 1.0) / d);
  return rep;
}

std::vector<std::vector<int>> t_components(const Window& window,
                                           const std::vector<int>& S, int t) {
  if (t < 1) throw ArgumentError("t must be >= 1");
  const int n = static_cast<int>(S.size());
  UnionFind uf(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (window.distance(S[i], S[j]) <= t) uf.unite(i, j);
    }
  }
  std::vector<std::vector<int>> parts;
  std::vector<int> root_to_part(n, -1);
  for (int i = 0; i < n; ++i) {
    const int r = uf.find(i);
    if (root_to_part[r] < 0) {
      root_to_part[r] = static_cast<int>(parts.size());
      parts.emplace_back();
    }
    parts[root_to_part[r]].push_back(S[i]);
  }
  return parts;
}

}  // namespace percolata
