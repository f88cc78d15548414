#include "percolata/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <set>

#include "percolata/errors.hpp"
#include "percolata/interfaces.hpp"
#include "percolata/parallel.hpp"

namespace percolata {

EventPolynomial& EventPolynomial::operator+=(const EventPolynomial& other) {
  if (m != other.m) throw ArgumentError("polynomial edge counts differ");
  for (int a = 0; a <= m; ++a) coeff[a] += other.coeff[a];
  return *this;
}

EventPolynomial& EventPolynomial::operator-=(const EventPolynomial& other) {
  if (m != other.m) throw ArgumentError("polynomial edge counts differ");
  for (int a = 0; a <= m; ++a) coeff[a] -= other.coeff[a];
  return *this;
}

bool EventPolynomial::is_zero() const {
  return std::all_of(coeff.begin(), coeff.end(),
                     [](const BigInt& c) { return c == 0; });
}

BigRational evaluate(const EventPolynomial& poly, const BigRational& p) {
  const BigRational q = 1 - p;
  std::vector<BigRational> p_pow(poly.m + 1), q_pow(poly.m + 1);
  p_pow[0] = 1;
  q_pow[0] = 1;
  for (int i = 1; i <= poly.m; ++i) {
    p_pow[i] = p_pow[i - 1] * p;
    q_pow[i] = q_pow[i - 1] * q;
  }
  BigRational result = 0;
  for (int a = 0; a <= poly.m; ++a) {
    if (poly.coeff[a] != 0) {
      result += BigRational(poly.coeff[a]) * p_pow[a] * q_pow[poly.m - a];
    }
  }
  return result;
}

std::complex<double> evaluate(const EventPolynomial& poly,
                              std::complex<double> z) {
  const std::complex<double> q = 1.0 - z;
  // Kahan-compensated sum over the monomials.
  std::complex<double> sum = 0.0, comp = 0.0;
  for (int a = 0; a <= poly.m; ++a) {
    if (poly.coeff[a] == 0) continue;
    std::complex<double> term = static_cast<double>(poly.coeff[a]);
    for (int i = 0; i < a; ++i) term *= z;
    for (int i = a; i < poly.m; ++i) term *= q;
    const std::complex<double> y = term - comp;
    const std::complex<double> t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

double evaluate(const EventPolynomial& poly, double p) {
  return evaluate(poly, std::complex<double>(p, 0.0)).real();
}

namespace {

void check_cap(const Window& window) {
  if (window.num_edges() > kOracleEdgeCap) {
    throw ResourceLimitError("window has " +
                             std::to_string(window.num_edges()) +
                             " edges; brute-force cap is " +
                             std::to_string(kOracleEdgeCap));
  }
}

}  // namespace

EventPolynomial exact_event_polynomial(const Window& window,
                                       const ConfigPredicate& event) {
  check_cap(window);
  const int m = window.num_edges();
  const std::uint64_t total = 1ULL << m;
  std::vector<std::vector<std::int64_t>> tallies(
      worker_count(), std::vector<std::int64_t>(m + 1, 0));
  parallel_ranges(static_cast<std::int64_t>(total),
                  [&](int worker, std::int64_t begin, std::int64_t end) {
                    auto& tally = tallies[worker];
                    for (std::int64_t s = begin; s < end; ++s) {
                      const auto mask = static_cast<std::uint64_t>(s);
                      if (event(mask)) ++tally[std::popcount(mask)];
                    }
                  });
  EventPolynomial poly(m);
  for (const auto& tally : tallies) {
    for (int a = 0; a <= m; ++a) poly.coeff[a] += tally[a];
  }
  return poly;
}

namespace {

/// Size-n slices of prod(1 +- x^{s_i}): signed gives the coefficients of
/// 1 - prod(1 - x^{s_i}) (the inclusion-exclusion weights), unsigned those
/// of prod(1 + x^{s_i}) - 1 (plain multi-interface counts).
std::vector<std::int64_t> size_slices(const std::vector<int>& sizes, int n_max,
                                      bool signed_sum) {
  std::vector<std::int64_t> prod(n_max + 1, 0);
  prod[0] = 1;
  for (int sz : sizes) {
    if (sz > n_max) continue;
    for (int n = n_max; n >= sz; --n) {
      prod[n] += signed_sum ? -prod[n - sz] : prod[n - sz];
    }
  }
  for (int n = 1; n <= n_max; ++n) prod[n] = signed_sum ? -prod[n] : prod[n];
  prod[0] = 0;
  return prod;
}

/// sum over non-empty sub-collections of (-1)^(count+1), computed from the
/// alternating binomial sum rather than assumed to collapse to an indicator.
std::int64_t signed_total(std::size_t collection_size) {
  std::int64_t total = 0, binom = 1;
  for (std::size_t k = 1; k <= collection_size; ++k) {
    binom = binom * static_cast<std::int64_t>(collection_size - k + 1) /
            static_cast<std::int64_t>(k);
    total += (k % 2 == 1) ? binom : -binom;
  }
  return total;
}

struct SignedTally {
  std::vector<std::vector<std::int64_t>> by_open;  // [row][open count]
  SignedTally(int rows, int m)
      : by_open(rows, std::vector<std::int64_t>(m + 1, 0)) {}
  void merge(const SignedTally& other) {
    for (std::size_t r = 0; r < by_open.size(); ++r) {
      for (std::size_t a = 0; a < by_open[r].size(); ++a) {
        by_open[r][a] += other.by_open[r][a];
      }
    }
  }
};

EventPolynomial from_row(const SignedTally& tally, int row, int m) {
  EventPolynomial poly(m);
  for (int a = 0; a <= m; ++a) poly.coeff[a] = tally.by_open[row][a];
  return poly;
}

}  // namespace

InclusionExclusionReport verify_inclusion_exclusion(const Window& window,
                                                    int big_n, int t,
                                                    int n_max) {
  check_cap(window);
  if (n_max < 1) throw ArgumentError("n_max must be >= 1");
  const int m = window.num_edges();
  const std::uint64_t total = 1ULL << m;

  // Candidate interfaces with at most n_max members, for the completeness
  // audit: every occurring interface that small must have been enumerable.
  std::set<std::vector<int>> candidate_sets;
  for (const auto& iface : enumerate_interfaces(window, big_n, t, n_max)) {
    candidate_sets.insert(iface.members);
  }

  // Tally rows: 0 lhs, 1 rhs, 2 d_event, 3 connect, 4 lhs_uncond,
  // 5 rhs_uncond, then four per-size blocks.
  const int fixed_rows = 6;
  const int rows = fixed_rows + 4 * n_max;
  auto term_row = [&](int n) { return fixed_rows + (n - 1); };
  auto abs_row = [&](int n) { return fixed_rows + n_max + (n - 1); };
  auto term_u_row = [&](int n) { return fixed_rows + 2 * n_max + (n - 1); };
  auto abs_u_row = [&](int n) { return fixed_rows + 3 * n_max + (n - 1); };

  std::vector<SignedTally> tallies(worker_count(), SignedTally(rows, m));
  std::mutex merge_mutex;
  bool identity = true, identity_u = true, theta_identity = true,
       completeness = true;
  std::uint64_t witness = ~0ULL;

  parallel_ranges(
      static_cast<std::int64_t>(total),
      [&](int worker, std::int64_t begin, std::int64_t end) {
        Configuration config = all_closed_configuration(window);
        auto& tally = tallies[worker];
        bool ok_id = true, ok_id_u = true, ok_theta = true, ok_complete = true;
        std::uint64_t local_witness = ~0ULL;
        for (std::int64_t s = begin; s < end; ++s) {
          const auto mask = static_cast<std::uint64_t>(s);
          for (int e = 0; e < m; ++e) config.open[e] = (mask >> e) & 1;
          const int a = std::popcount(mask);

          const ClusterLabeling labeling = label_clusters(config);
          const int c0 = labeling.cluster_of(0);
          const bool connect = labeling.touches_boundary[c0] != 0;
          bool d_event = false;
          if (!connect) {
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
            d_event = diam <= 20 * big_n;
          }
          const bool d_complement = !d_event;

          std::vector<int> occ_sizes;
          for (const auto& iface : occurring_interfaces(config, big_n, t)) {
            occ_sizes.push_back(iface.size());
            if (iface.size() <= n_max &&
                candidate_sets.count(iface.members) == 0) {
              ok_complete = false;
              local_witness = std::min(local_witness, mask);
            }
          }
          const bool any_occ = !occ_sizes.empty();
          const std::int64_t rhs_value = signed_total(occ_sizes.size());

          tally.by_open[0][a] += (d_complement && any_occ) ? 1 : 0;
          tally.by_open[1][a] += d_complement ? rhs_value : 0;
          tally.by_open[2][a] += d_event ? 1 : 0;
          tally.by_open[3][a] += connect ? 1 : 0;
          tally.by_open[4][a] += any_occ ? 1 : 0;
          tally.by_open[5][a] += rhs_value;
          const auto signed_slices = size_slices(occ_sizes, n_max, true);
          const auto abs_slices = size_slices(occ_sizes, n_max, false);
          for (int n = 1; n <= n_max; ++n) {
            tally.by_open[term_row(n)][a] +=
                d_complement ? signed_slices[n] : 0;
            tally.by_open[abs_row(n)][a] += d_complement ? abs_slices[n] : 0;
            tally.by_open[term_u_row(n)][a] += signed_slices[n];
            tally.by_open[abs_u_row(n)][a] += abs_slices[n];
          }

          bool bad = false;
          if (((d_complement && any_occ) ? 1 : 0) !=
              (d_complement ? rhs_value : 0)) {
            ok_id = false;
            bad = true;
          }
          if ((any_occ ? 1 : 0) != rhs_value) {
            ok_id_u = false;
            bad = true;
          }
          // Occurrence forces disconnection and D forces finiteness, so the
          // finite-window complement of the connection event must split as
          // D plus (D^c with an occurrence).
          if ((!connect ? 1 : 0) !=
              (d_event ? 1 : 0) + ((d_complement && any_occ) ? 1 : 0)) {
            ok_theta = false;
            bad = true;
          }
          if (bad) local_witness = std::min(local_witness, mask);
        }
        std::scoped_lock lock(merge_mutex);
        identity &= ok_id;
        identity_u &= ok_id_u;
        theta_identity &= ok_theta;
        completeness &= ok_complete;
        witness = std::min(witness, local_witness);
      });

  SignedTally merged(rows, m);
  for (const auto& tl : tallies) merged.merge(tl);

  if (!completeness) {
    throw InvariantError(
        "an occurring interface was missing from the enumerated candidates; "
        "witness configuration mask " +
        std::to_string(witness));
  }

  InclusionExclusionReport report;
  report.lhs = from_row(merged, 0, m);
  report.rhs = from_row(merged, 1, m);
  report.d_event = from_row(merged, 2, m);
  report.connect_event = from_row(merged, 3, m);
  report.lhs_unconditioned = from_row(merged, 4, m);
  report.rhs_unconditioned = from_row(merged, 5, m);
  for (int n = 1; n <= n_max; ++n) {
    report.terms_by_size.push_back(from_row(merged, term_row(n), m));
    report.terms_by_size_abs.push_back(from_row(merged, abs_row(n), m));
    report.terms_by_size_unconditioned.push_back(
        from_row(merged, term_u_row(n), m));
    report.terms_by_size_unconditioned_abs.push_back(
        from_row(merged, abs_u_row(n), m));
  }
  report.identity_holds = identity && report.lhs == report.rhs;
  report.unconditioned_identity_holds =
      identity_u && report.lhs_unconditioned == report.rhs_unconditioned;
  report.theta_identity_holds = theta_identity;
  report.has_witness = witness != ~0ULL;
  report.witness = report.has_witness ? witness : 0;
  return report;
}

}  // namespace percolata
