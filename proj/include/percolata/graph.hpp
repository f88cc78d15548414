#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace percolata {

/// Factor size 0 encodes a bi-infinite line; any other value is a finite
/// cycle of that length (>= 3).
inline constexpr int kInfiniteFactor = 0;

inline constexpr std::size_t kDefaultVertexBudget = 2'000'000;

/// A transitive graph presented as a finite product of cycle-graphs.
/// "inf,inf,6" is Z^2 x (Z/6).
struct GraphSpec {
  std::vector<int> factors;

  static GraphSpec parse(const std::string& text);
  std::string to_string() const;

  int num_factors() const { return static_cast<int>(factors.size()); }
  int dimension() const;  // number of infinite factors
  int degree() const { return 2 * num_factors(); }
  /// Index of the first infinite factor (the geodesic axis), if any.
  std::optional<int> first_infinite_factor() const;

  bool operator==(const GraphSpec&) const = default;
};

/// Coordinates, one entry per factor; finite-factor entries reduced into
/// [0, n).
using Coord = std::vector<std::int32_t>;

/// Distance within a single factor (cycle metric for finite factors).
int factor_distance(int factor_size, std::int32_t a, std::int32_t b);

/// Graph distance in the product: the sum of per-factor distances.
int ambient_distance(const GraphSpec& spec, const Coord& a, const Coord& b);

/// The 2*|factors| vertices adjacent to v. Throws ArgumentError on arity
/// mismatch or out-of-range coordinates.
std::vector<Coord> neighbors(const GraphSpec& spec, const Coord& v);

bool valid_vertex(const GraphSpec& spec, const Coord& v);

struct CoordHash {
  std::size_t operator()(const Coord& c) const;
};

/// The induced subgraph on B_r(o), with distance labels. Doubles as the
/// finite sampling window: vertices at distance exactly r form the boundary,
/// the finite stand-in for infinity.
struct Ball {
  GraphSpec spec;
  int radius = 0;

  std::vector<Coord> coords;  // index 0 is the root
  std::vector<int> dist;      // root distance labels
  std::vector<std::pair<int, int>> edges;  // induced, first < second
  std::vector<std::uint64_t> edge_keys;    // canonical coordinate keys

  // CSR adjacency; adj_edge[i] is the window edge id of adj_vertex[i].
  std::vector<int> adj_offset;
  std::vector<int> adj_vertex;
  std::vector<int> adj_edge;

  std::vector<char> on_boundary;  // dist == radius
  std::vector<int> boundary;      // boundary vertex indices

  std::unordered_map<Coord, int, CoordHash> index;

  int num_vertices() const { return static_cast<int>(coords.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  /// -1 when absent.
  int index_of(const Coord& c) const;
  int vertex_degree(int v) const { return adj_offset[v + 1] - adj_offset[v]; }
  int distance(int u, int v) const {
    return ambient_distance(spec, coords[u], coords[v]);
  }
  /// Vertex indices at ambient distance <= r from window vertex v.
  std::vector<int> ball_around(int v, int r) const;
};

/// Breadth-first ball of radius r around the origin. Throws
/// ResourceLimitError when the vertex budget is exceeded.
Ball ball(const GraphSpec& spec, int radius,
          std::size_t vertex_budget = kDefaultVertexBudget);

/// Root-preserving isomorphism of equal-radius induced balls. Backtracking
/// with iterated invariant refinement; throws ArgumentError on radius
/// mismatch.
bool rooted_ball_isomorphic(const Ball& a, const Ball& b);

struct LocalityRadius {
  int radius = 0;
  bool at_cap = false;  // all radii up to r_max agreed
};

/// Largest r <= r_max with isomorphic rooted r-balls. Radii are scanned
/// upward; the first disagreeing radius stops the scan (ball disagreement is
/// monotone on the product-graph families in scope, and is checked as a
/// property elsewhere).
LocalityRadius locality_radius(const GraphSpec& a, const GraphSpec& b,
                               int r_max,
                               std::size_t vertex_budget = kDefaultVertexBudget);

}  // namespace percolata
