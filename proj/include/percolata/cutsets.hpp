#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "percolata/graph.hpp"

namespace percolata {

using Window = Ball;

/// Distinguished target standing for infinity: a virtual sink adjacent to
/// every window-boundary vertex.
inline constexpr int kSink = -1;

enum class CutKind { vertex, bond };

struct Cutset {
  CutKind kind = CutKind::vertex;
  std::vector<int> members;  // vertex ids, or edge ids for bond cutsets
  int source = 0;
  int target = kSink;
  bool is_cutset = false;
  bool is_minimal = false;
  /// Least k such that the members are k-connected (any two members at
  /// auxiliary distance <= k deemed adjacent). Singletons report 1.
  int least_k = 0;
  /// Vertex kind: some member lies on the window boundary. Bond kind: some
  /// member edge has a boundary endpoint. Such cutsets are censored from
  /// connectivity statistics.
  bool touches_window_boundary = false;
};

/// Fills every certificate for the given member set. Vertex kind requires
/// u, t not in members.
Cutset cutset_status(const Window& window, std::vector<int> members,
                     CutKind kind, int u, int t);

inline constexpr std::size_t kDefaultEnumerationBudget = 5'000'000;

/// All inclusion-minimal vertex separators between u and t of size at most
/// max_size, via neighborhoods of connected u-side components. The budget
/// counts search-tree nodes; exhausting it raises ResourceLimitError.
std::vector<Cutset> enumerate_minimal_cutsets(
    const Window& window, int u, int t, int max_size,
    std::size_t budget = kDefaultEnumerationBudget);

/// Bond analogue: inclusion-minimal edge cuts (edge boundaries of connected
/// u-side components).
std::vector<Cutset> enumerate_minimal_bond_cutsets(
    const Window& window, int u, int t, int max_size,
    std::size_t budget = kDefaultEnumerationBudget);

/// Empirical coarse-connectivity constant: the max least_k over all
/// enumerated minimal cutsets for the given pairs, cutsets touching the
/// window boundary censored. Throws InconclusiveError when everything was
/// censored.
int cut_connectivity(const Window& window,
                     const std::vector<std::pair<int, int>>& pairs,
                     int max_size,
                     std::size_t budget = kDefaultEnumerationBudget);
int cut_connectivity_e(const Window& window,
                       const std::vector<std::pair<int, int>>& pairs,
                       int max_size,
                       std::size_t budget = kDefaultEnumerationBudget);

struct BoundaryReport {
  std::vector<int> exposed;            // vertices of A seeing the outside
  std::vector<int> edge_boundary;      // edges with exactly one endpoint in A
  std::vector<int> exterior_exposed;   // outside vertices adjacent to A
  double iso_ratio = 0.0;              // |exposed| / |A|^((d-1)/d)
};

/// Exposed boundary of A: vertices of A adjacent to the component of the
/// window boundary within the complement of A (interior holes do not count).
/// A must not touch the window boundary.
BoundaryReport boundaries(const Window& window, const std::vector<int>& A);

/// Partition of S into t-connected components (ambient distance <= t deemed
/// adjacent). Vertex ids refer to the window.
std::vector<std::vector<int>> t_components(const Window& window,
                                           const std::vector<int>& S, int t);

}  // namespace percolata
