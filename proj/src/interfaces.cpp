#include "percolata/interfaces.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "percolata/cutsets.hpp"
#include "percolata/errors.hpp"
#include "percolata/rng.hpp"

namespace percolata {

namespace {

std::vector<int> within_distance(const Window& w,
                                 const std::vector<int>& members, int r) {
  std::vector<int> out;
  for (int v = 0; v < w.num_vertices(); ++v) {
    for (int m : members) {
      if (w.distance(v, m) <= r) {
        out.push_back(v);
        break;
      }
    }
  }
  return out;
}

Interface make_interface(const Window& w, std::vector<int> members, int big_n,
                         int t) {
  Interface iface;
  std::sort(members.begin(), members.end());
  iface.members = std::move(members);
  iface.big_n = big_n;
  iface.t = t;
  iface.closure_5n = within_distance(w, iface.members, 5 * big_n);
  iface.closure_10n = within_distance(w, iface.members, 10 * big_n);
  return iface;
}

/// Contains o, or o's component of the complement (window adjacency) stays
/// off the window boundary.
bool contains_or_encloses_origin(const Window& w,
                                 const std::vector<char>& in_set) {
  if (in_set[0]) return true;
  std::vector<char> seen(w.num_vertices(), 0);
  std::vector<int> queue{0};
  seen[0] = 1;
  if (w.on_boundary[0]) return false;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int v = queue[head];
    for (int i = w.adj_offset[v]; i < w.adj_offset[v + 1]; ++i) {
      const int x = w.adj_vertex[i];
      if (seen[x] || in_set[x]) continue;
      if (w.on_boundary[x]) return false;
      seen[x] = 1;
      queue.push_back(x);
    }
  }
  return true;
}

/// Is there a path from o to the window boundary using edges that are open
/// or lie outside the closure (an edge lies inside when both endpoints do)?
bool origin_escapes(const Configuration& config,
                    const std::vector<char>& in_closure) {
  const Window& w = *config.window;
  std::vector<char> seen(w.num_vertices(), 0);
  std::vector<int> queue{0};
  seen[0] = 1;
  if (w.on_boundary[0]) return true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int v = queue[head];
    for (int i = w.adj_offset[v]; i < w.adj_offset[v + 1]; ++i) {
      const int x = w.adj_vertex[i];
      if (seen[x]) continue;
      const int e = w.adj_edge[i];
      if (!config.open[e] && in_closure[v] && in_closure[x]) continue;
      if (w.on_boundary[x]) return true;
      seen[x] = 1;
      queue.push_back(x);
    }
  }
  return false;
}

std::vector<char> to_mask(const Window& w, const std::vector<int>& vs) {
  std::vector<char> mask(w.num_vertices(), 0);
  for (int v : vs) mask[v] = 1;
  return mask;
}

bool occurs_with_mask(const Configuration& config, const Interface& iface,
                      const std::vector<char>& bad) {
  const Window& w = *config.window;
  const auto in_members = to_mask(w, iface.members);
  for (int m : iface.members) {
    if (!bad[m]) return false;
  }
  for (int v = 0; v < w.num_vertices(); ++v) {
    if (in_members[v] || !bad[v]) continue;
    for (int m : iface.members) {
      if (w.distance(v, m) <= iface.t) return false;  // bad t-fringe vertex
    }
  }
  return !origin_escapes(config, to_mask(w, iface.closure_5n));
}

std::vector<Interface> occurring_with_mask(const Configuration& config,
                                           int big_n, int t,
                                           const std::vector<char>& bad) {
  const Window& w = *config.window;
  std::vector<int> bad_list;
  for (int v = 0; v < w.num_vertices(); ++v) {
    if (bad[v]) bad_list.push_back(v);
  }
  std::vector<Interface> out;
  for (auto& part : t_components(w, bad_list, t)) {
    if (!contains_or_encloses_origin(w, to_mask(w, part))) continue;
    Interface iface = make_interface(w, std::move(part), big_n, t);
    // Conditions 1 and 2 hold by construction (maximal bad t-component);
    // condition 3 remains.
    if (!origin_escapes(config, to_mask(w, iface.closure_5n))) {
      out.push_back(std::move(iface));
    }
  }
  std::sort(out.begin(), out.end(), [](const Interface& a, const Interface& b) {
    return a.members < b.members;
  });
  return out;
}

}  // namespace

std::vector<int> bad_component(const Configuration& config, int x, int big_n,
                               int t) {
  if (t < 1) throw ArgumentError("t must be >= 1");
  const Window& w = *config.window;
  const auto bad = bad_vertex_mask(config, big_n);
  if (!bad[x]) return {};
  std::vector<char> seen(w.num_vertices(), 0);
  std::vector<int> queue{x};
  seen[x] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int v = queue[head];
    for (int u = 0; u < w.num_vertices(); ++u) {
      if (seen[u] || !bad[u]) continue;
      if (w.distance(v, u) <= t) {
        seen[u] = 1;
        queue.push_back(u);
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

std::optional<Interface> extract_interface(const Configuration& config,
                                           int big_n, int t) {
  if (big_n < 1 || t < 1) throw ArgumentError("need N >= 1 and t >= 1");
  const Window& w = *config.window;
  const ClusterLabeling labeling = label_clusters(config);
  const int c0 = labeling.cluster_of(0);
  if (labeling.touches_boundary[c0]) return std::nullopt;
  std::vector<int> cluster;
  for (int v = 0; v < w.num_vertices(); ++v) {
    if (labeling.cluster_of(v) == c0) cluster.push_back(v);
  }
  // The diameter threshold decides extraction; always take the exact value.
  int diam = 0;
  for (std::size_t i = 0; i < cluster.size(); ++i) {
    for (std::size_t j = i + 1; j < cluster.size(); ++j) {
      diam = std::max(diam, w.distance(cluster[i], cluster[j]));
    }
  }
  if (diam <= 20 * big_n) return std::nullopt;
  const std::vector<int> dilated = within_distance(w, cluster, big_n);
  for (int v : dilated) {
    if (w.on_boundary[v]) return std::nullopt;  // margin precondition
  }
  const BoundaryReport rep = boundaries(w, dilated);
  if (rep.exposed.empty()) return std::nullopt;
  const auto bad = bad_vertex_mask(config, big_n);
  for (int v : rep.exposed) {
    if (!bad[v]) {
      throw InvariantError(
          "exposed boundary of the dilated finite cluster contains a good vertex");
    }
  }
  // The t-connected bad component around the exposed boundary.
  std::vector<int> bad_list;
  for (int v = 0; v < w.num_vertices(); ++v) {
    if (bad[v]) bad_list.push_back(v);
  }
  const auto parts = t_components(w, bad_list, t);
  int home = -1;
  std::vector<int> part_of(w.num_vertices(), -1);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (int v : parts[i]) part_of[v] = static_cast<int>(i);
  }
  for (int v : rep.exposed) {
    if (home < 0) home = part_of[v];
    if (part_of[v] != home) {
      throw InvariantError(
          "exposed boundary splits across bad t-components; t too small for this graph");
    }
  }
  return make_interface(w, parts[home], big_n, t);
}

bool interface_occurs(const Configuration& config, const Interface& iface) {
  return occurs_with_mask(config, iface,
                          bad_vertex_mask(config, iface.big_n));
}

bool closure_10n_cuts(const Configuration& config, const Interface& iface) {
  return !origin_escapes(config, to_mask(*config.window, iface.closure_10n));
}

std::vector<Interface> occurring_interfaces(const Configuration& config,
                                            int big_n, int t) {
  if (big_n < 1 || t < 1) throw ArgumentError("need N >= 1 and t >= 1");
  return occurring_with_mask(config, big_n, t,
                             bad_vertex_mask(config, big_n));
}

namespace {

struct InterfaceEnumerator {
  const Window& w;
  int big_n, t, max_size;
  std::size_t budget;
  std::size_t nodes = 0;
  std::vector<char> banned_seed;  // earlier seeds: their sets were already produced
  std::vector<char> in_s;
  std::vector<char> ever_candidate;
  std::vector<int> s;
  std::vector<Interface>* out;

  std::vector<int> t_neighbors(int v) const {
    std::vector<int> ns;
    for (int u = 0; u < w.num_vertices(); ++u) {
      if (u != v && !in_s[u] && !ever_candidate[u] && !banned_seed[u] &&
          w.distance(u, v) <= t) {
        ns.push_back(u);
      }
    }
    return ns;
  }

  void emit() {
    if (!contains_or_encloses_origin(w, in_s)) return;
    out->push_back(make_interface(w, s, big_n, t));
  }

  /// Each t-connected superset of the seed is reached exactly once: at every
  /// level the extension candidates are consumed left to right, and a vertex
  /// that has ever been a candidate is never re-proposed deeper down.
  void grow(std::vector<int> ext) {
    if (++nodes > budget) {
      throw ResourceLimitError("interface enumeration budget exhausted");
    }
    emit();
    if (static_cast<int>(s.size()) == max_size) return;
    while (!ext.empty()) {
      const int v = ext.back();
      ext.pop_back();
      in_s[v] = 1;
      s.push_back(v);
      std::vector<int> next = ext;
      std::vector<int> added;
      for (int u : t_neighbors(v)) {
        next.push_back(u);
        ever_candidate[u] = 1;
        added.push_back(u);
      }
      grow(std::move(next));
      for (int u : added) ever_candidate[u] = 0;
      s.pop_back();
      in_s[v] = 0;
    }
  }
};

}  // namespace

std::vector<Interface> enumerate_interfaces(const Window& window, int big_n,
                                            int t, int max_size,
                                            std::size_t budget) {
  if (big_n < 1 || t < 1) throw ArgumentError("need N >= 1 and t >= 1");
  if (max_size < 1) throw ArgumentError("max_size must be >= 1");
  const auto axis = window.spec.first_infinite_factor();
  if (!axis) {
    throw ArgumentError("interface enumeration needs an infinite factor");
  }
  std::vector<Interface> out;
  InterfaceEnumerator en{window, big_n, t, max_size, budget, 0,
                         {},     {},    {}, {},       &out};
  en.banned_seed.assign(window.num_vertices(), 0);
  en.in_s.assign(window.num_vertices(), 0);
  en.ever_candidate.assign(window.num_vertices(), 0);
  for (int i = 0; i <= t * (max_size - 1); ++i) {
    Coord c(window.spec.num_factors(), 0);
    c[*axis] = i;
    const int seed = window.index_of(c);
    if (seed < 0) break;
    if (!en.banned_seed[seed]) {
      en.in_s[seed] = 1;
      en.s.push_back(seed);
      en.grow(en.t_neighbors(seed));
      en.s.pop_back();
      en.in_s[seed] = 0;
      en.banned_seed[seed] = 1;
    }
  }
  std::sort(out.begin(), out.end(), [](const Interface& a, const Interface& b) {
    return a.members < b.members;
  });
  return out;
}

namespace {

/// Occurring-multi-interface size polynomial: coefficients of
/// prod_i (1 + x^{s_i}) - 1 (unsigned) or 1 - prod_i (1 - x^{s_i}) (signed),
/// truncated at n_max.
std::vector<std::int64_t> subset_size_counts(const std::vector<int>& sizes,
                                             int n_max, bool signed_sum) {
  std::vector<std::int64_t> prod(n_max + 1, 0);
  prod[0] = 1;
  for (int sz : sizes) {
    if (sz > n_max) continue;
    for (int n = n_max; n >= sz; --n) {
      prod[n] += signed_sum ? -prod[n - sz] : prod[n - sz];
    }
  }
  std::vector<std::int64_t> out(n_max + 1, 0);
  for (int n = 1; n <= n_max; ++n) out[n] = signed_sum ? -prod[n] : prod[n];
  return out;
}

bool hits_geodesic(const Window& w, const Interface& iface, int axis) {
  const int limit = iface.t * (iface.size() - 1);
  for (int m : iface.members) {
    const Coord& c = w.coords[m];
    bool on_axis = true;
    for (int f = 0; f < w.spec.num_factors(); ++f) {
      if (f != axis && c[f] != 0) {
        on_axis = false;
        break;
      }
    }
    if (on_axis && c[axis] >= 0 && c[axis] <= limit) return true;
  }
  return false;
}

}  // namespace

CensusResult occurring_census(const Configuration& config, int big_n, int t,
                              int n_max) {
  if (n_max < 1) throw ArgumentError("n_max must be >= 1");
  const Window& w = *config.window;
  const auto occ = occurring_interfaces(config, big_n, t);
  CensusResult res;
  std::vector<int> sizes;
  std::vector<char> used(w.num_vertices(), 0);
  const auto axis = w.spec.first_infinite_factor();
  for (const Interface& iface : occ) {
    sizes.push_back(iface.size());
    for (int m : iface.members) {
      if (used[m]) res.disjoint = false;
      used[m] = 1;
    }
    if (axis && !hits_geodesic(w, iface, *axis)) res.geodesic_hit = false;
  }
  res.counts = subset_size_counts(sizes, n_max, /*signed_sum=*/false);
  return res;
}

ExpansionTerm expansion_term_monte_carlo(const Window& window, int big_n,
                                         int t, int n, double p,
                                         std::int64_t samples,
                                         std::uint64_t seed) {
  if (n < 1 || samples < 1) throw ArgumentError("need n >= 1 and samples >= 1");
  ExpansionTerm term;
  term.n = n;
  term.exact = false;
  term.samples = samples;
  double sum = 0.0, sum_sq = 0.0;
  for (std::int64_t s = 0; s < samples; ++s) {
    const Configuration config =
        sample_configuration(window, p, seed, static_cast<std::uint64_t>(s));
    const ClusterLabeling labeling = label_clusters(config);
    const int c0 = labeling.cluster_of(0);
    bool d_complement;
    if (labeling.touches_boundary[c0]) {
      d_complement = true;  // boundary touch stands for infinite diameter
    } else {
      std::vector<int> cluster;
      for (int v = 0; v < window.num_vertices(); ++v) {
        if (labeling.cluster_of(v) == c0) cluster.push_back(v);
      }
      int diam = 0;
      for (std::size_t i = 0; i < cluster.size(); ++i) {
        for (std::size_t j = i + 1; j < cluster.size(); ++j) {
          diam = std::max(diam, window.distance(cluster[i], cluster[j]));
        }
      }
      d_complement = diam > 20 * big_n;
    }
    double value = 0.0;
    if (d_complement) {
      std::vector<int> sizes;
      for (const auto& iface : occurring_interfaces(config, big_n, t)) {
        sizes.push_back(iface.size());
      }
      value = static_cast<double>(subset_size_counts(sizes, n, true)[n]);
    }
    sum += value;
    sum_sq += value * value;
  }
  term.estimate = sum / static_cast<double>(samples);
  const double var =
      std::max(0.0, sum_sq / samples - term.estimate * term.estimate);
  term.std_error = std::sqrt(var / samples);
  return term;
}

ExpansionTerm expansion_term_exact(const Window& window, int big_n, int t,
                                   int n) {
  const auto report = verify_inclusion_exclusion(window, big_n, t, n);
  ExpansionTerm term;
  term.n = n;
  term.exact = true;
  term.poly = report.terms_by_size[n - 1];
  return term;
}

SeriesReport theta_series(const Window& window, int big_n, int t, int n_max,
                          std::complex<double> z, double p0, double r) {
  if (!(r > 0.0) || !(p0 - r > 0.0) || p0 > 1.0) {
    throw ArgumentError("need 0 < r < p0 <= 1");
  }
  if (std::abs(z - std::complex<double>(p0, 0.0)) > r + 1e-12) {
    throw ArgumentError("z must lie in the disk |z - p0| <= r");
  }
  const auto report = verify_inclusion_exclusion(window, big_n, t, n_max);
  SeriesReport out;
  out.p0 = p0;
  out.r = r;
  const double a_const = static_cast<double>(window.num_edges());
  out.a_r = a_const * std::log((p0 + r) / (p0 - r));
  const BigRational p_low(p0 - r);

  auto diagnose = [&](const std::vector<EventPolynomial>& terms,
                      const std::vector<EventPolynomial>& abs_terms,
                      std::vector<double>* mags, std::vector<double>* envs,
                      bool* holds, double* root,
                      std::vector<std::complex<double>>* values) {
    *holds = true;
    *root = 0.0;
    for (int n = 1; n <= n_max; ++n) {
      const std::complex<double> fz = evaluate(terms[n - 1], z);
      if (values) values->push_back(fz);
      const double mag = std::abs(fz);
      mags->push_back(mag);
      const double env =
          std::exp(out.a_r * n) *
          static_cast<double>(evaluate(abs_terms[n - 1], p_low));
      envs->push_back(env);
      if (mag > env * (1.0 + 1e-9) + 1e-12) *holds = false;
      const double at_p0 = std::abs(evaluate(terms[n - 1], p0));
      if (at_p0 > 0.0) {
        *root = std::max(*root, std::pow(at_p0, 1.0 / n));
      }
    }
  };

  diagnose(report.terms_by_size, report.terms_by_size_abs,
           &out.term_magnitudes, &out.envelopes, &out.envelope_holds,
           &out.decay_root, &out.term_values);
  diagnose(report.terms_by_size_unconditioned,
           report.terms_by_size_unconditioned_abs, &out.aux_term_magnitudes,
           &out.aux_envelopes, &out.aux_envelope_holds, &out.aux_decay_root,
           nullptr);

  out.value = evaluate(report.d_event, z);
  for (const auto& fz : out.term_values) out.value += fz;
  return out;
}

}  // namespace percolata
