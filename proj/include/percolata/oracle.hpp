#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "percolata/percolation.hpp"

namespace percolata {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Hard cap on brute-force window size: 2^22 configurations.
inline constexpr int kOracleEdgeCap = 22;

/// P_p(event) = sum_a coeff[a] * p^a * (1-p)^(m-a), where coeff[a] counts the
/// configurations with exactly a open edges satisfying the event. Signed
/// coefficients are allowed so the same shape carries inclusion-exclusion
/// terms.
struct EventPolynomial {
  int m = 0;
  std::vector<BigInt> coeff;  // size m + 1

  EventPolynomial() = default;
  explicit EventPolynomial(int edges) : m(edges), coeff(edges + 1) {}

  bool operator==(const EventPolynomial&) const = default;
  EventPolynomial& operator+=(const EventPolynomial& other);
  EventPolynomial& operator-=(const EventPolynomial& other);
  bool is_zero() const;
};

/// Pure predicate on edge bitmasks; bit e is edge e's open state.
using ConfigPredicate = std::function<bool(std::uint64_t mask)>;

EventPolynomial exact_event_polynomial(const Window& window,
                                       const ConfigPredicate& event);

BigRational evaluate(const EventPolynomial& poly, const BigRational& p);
/// Compensated (Kahan) summation over the Bernstein monomials.
std::complex<double> evaluate(const EventPolynomial& poly,
                              std::complex<double> z);
double evaluate(const EventPolynomial& poly, double p);

/// Exact inclusion-exclusion audit at scale N with connectivity parameter t.
/// All polynomials are over the full 2^m configuration space of the window.
struct InclusionExclusionReport {
  /// P(D_N^c and at least one interface occurs); D_N = {C_o stays off the
  /// window boundary and diam(C_o) <= 20N}.
  EventPolynomial lhs;
  /// Signed sum over multi-interfaces (disjoint tuples of candidate
  /// interfaces): sum_M (-1)^(count+1) P(D_N^c and M occurs).
  EventPolynomial rhs;
  /// Same identity without the D_N^c restriction; nontrivial even on windows
  /// too small for D_N^c to coexist with an occurrence.
  EventPolynomial lhs_unconditioned;
  EventPolynomial rhs_unconditioned;
  /// F_n, the signed size-n slices of rhs, n = 1..n_max.
  std::vector<EventPolynomial> terms_by_size;
  /// Unsigned companions sum_{|M|=n} P(D_N^c and M occurs), the envelope
  /// ingredient for complex evaluation.
  std::vector<EventPolynomial> terms_by_size_abs;
  /// Size-n slices of the unconditioned identity, with unsigned companions.
  std::vector<EventPolynomial> terms_by_size_unconditioned;
  std::vector<EventPolynomial> terms_by_size_unconditioned_abs;
  EventPolynomial d_event;        // P(D_N)
  EventPolynomial connect_event;  // P(o <-> window boundary)
  bool identity_holds = false;
  bool unconditioned_identity_holds = false;
  /// 1 - connect = d_event + lhs, valid when the boundary stands for
  /// infinity at this scale (every configuration with D_N^c has an
  /// occurrence).
  bool theta_identity_holds = false;
  /// First configuration violating any identity, if any.
  std::uint64_t witness = 0;
  bool has_witness = false;
};

InclusionExclusionReport verify_inclusion_exclusion(const Window& window,
                                                    int big_n, int t,
                                                    int n_max);

}  // namespace percolata
