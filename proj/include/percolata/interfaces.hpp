#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "percolata/oracle.hpp"
#include "percolata/percolation.hpp"

namespace percolata {

/// A finite t-connected vertex set that contains the origin or encloses it
/// (the origin's component of the complement stays off the window boundary).
struct Interface {
  std::vector<int> members;  // sorted window vertex ids
  int big_n = 1;
  int t = 2;
  std::vector<int> closure_5n;   // vertices within 5N of members
  std::vector<int> closure_10n;  // within 10N

  int size() const { return static_cast<int>(members.size()); }
};

/// The t-connected component of x within the N-bad vertices (window-local
/// goodness); empty when x is N-good.
std::vector<int> bad_component(const Configuration& config, int x, int big_n,
                               int t);

/// When C_o is finite (off the window boundary) with diam > 20N: the
/// t-connected bad component containing the exposed boundary of the
/// N-dilated cluster. Returns nothing when the preconditions fail. Raises
/// InvariantError if some exposed-boundary vertex is good, or if the exposed
/// boundary does not sit inside a single bad t-component.
std::optional<Interface> extract_interface(const Configuration& config,
                                           int big_n, int t);

/// The three occurrence conditions: every member bad, every t-close outsider
/// good, and the closed edges inside the 5N-closure cut o from the window
/// boundary (an edge lies inside a closure when both endpoints do).
bool interface_occurs(const Configuration& config, const Interface& iface);

/// True when the closed edges inside the 10N-closure of iface cut o from the
/// window boundary — the cutset property of extracted interfaces.
bool closure_10n_cuts(const Configuration& config, const Interface& iface);

inline constexpr std::size_t kDefaultInterfaceBudget = 20'000'000;

/// All candidate interfaces with at most max_size members: t-connected sets
/// grown from the geodesic-axis seeds gamma(0)..gamma(t*(max_size-1)) that
/// contain or enclose the origin. Exhaustive for the given window (every
/// size-n interface meets the axis within t*(n-1) steps).
std::vector<Interface> enumerate_interfaces(
    const Window& window, int big_n, int t, int max_size,
    std::size_t budget = kDefaultInterfaceBudget);

/// All interfaces occurring in the configuration, computed from the
/// definition: t-components of the bad vertex set that qualify as interfaces
/// and pass the occurrence conditions. Cheap per configuration; the ground
/// truth that candidate enumeration is audited against.
std::vector<Interface> occurring_interfaces(const Configuration& config,
                                            int big_n, int t);

/// Signed inclusion-exclusion slice of size n. Exact mode brute-forces the
/// window (edge cap applies); Monte Carlo mode tallies the signed count of
/// occurring size-n multi-interfaces on D_N^c samples.
struct ExpansionTerm {
  int n = 0;
  bool exact = false;
  EventPolynomial poly;   // exact mode
  double estimate = 0.0;  // either mode: value at the requested p
  double std_error = 0.0; // Monte Carlo mode
  std::int64_t samples = 0;
};

ExpansionTerm expansion_term_exact(const Window& window, int big_n, int t,
                                   int n);
ExpansionTerm expansion_term_monte_carlo(const Window& window, int big_n,
                                         int t, int n, double p,
                                         std::int64_t samples,
                                         std::uint64_t seed);

/// Truncated series for 1 - theta at a (possibly complex) parameter:
/// P(D_N)(z) + sum_{n<=n_max} F_n(z), with per-term magnitudes and the
/// envelope data e^{a(r) n} * G_n(p0 - r), where G_n is the unsigned
/// companion of F_n, A is the window edge count and
/// a(r) = A log((p0+r)/(p0-r)).
struct SeriesReport {
  std::complex<double> value;
  std::vector<std::complex<double>> term_values;  // F_n(z), n = 1..n_max
  std::vector<double> term_magnitudes;
  std::vector<double> envelopes;  // e^{a(r) n} * G_n(p0 - r)
  double a_r = 0.0;
  double p0 = 0.0;
  double r = 0.0;
  bool envelope_holds = false;  // |F_n(z)| <= envelope for all n
  /// Geometric decay proxy: max over n of |F_n(p0)|^(1/n), zero terms
  /// skipped.
  double decay_root = 0.0;
  /// Same diagnostics for the unconditioned expansion of P(some interface
  /// occurs), which stays nontrivial on windows where D_N^c and an
  /// occurrence cannot coexist.
  std::vector<double> aux_term_magnitudes;
  std::vector<double> aux_envelopes;
  bool aux_envelope_holds = false;
  double aux_decay_root = 0.0;
};

SeriesReport theta_series(const Window& window, int big_n, int t, int n_max,
                          std::complex<double> z, double p0, double r);

/// Per-configuration census of occurring multi-interfaces by size, with the
/// disjointness and geodesic-hitting audits.
struct CensusResult {
  std::vector<std::int64_t> counts;  // index n: occurring multi-interfaces of size n
  bool disjoint = true;              // occurring interfaces pairwise disjoint
  bool geodesic_hit = true;          // each meets gamma(i), 0 <= i <= t(n-1)
};

CensusResult occurring_census(const Configuration& config, int big_n, int t,
                              int n_max);

}  // namespace percolata
