#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <queue>

#include "percolata/errors.hpp"
#include "percolata/interfaces.hpp"
#include "percolata/oracle.hpp"
#include "percolata/percolation.hpp"

using namespace percolata;

namespace {

GraphSpec z2() { return GraphSpec::parse("inf,inf"); }

BigInt binomial(int n, int k) {
  BigInt b = 1;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

ConfigPredicate connect_event(const Window& w) {
  return [&w](std::uint64_t mask) {
    auto c = configuration_from_mask(w, mask);
    auto lab = label_clusters(c);
    return lab.touches_boundary[lab.cluster_of(0)] != 0;
  };
}

/// Independent complex evaluation: convert from the Bernstein-style basis
/// p^a (1-p)^(m-a) to plain monomial coefficients with exact integers, then
/// run Horner.
std::complex<double> monomial_eval(const EventPolynomial& poly,
                                   std::complex<double> z) {
  const int m = poly.m;
  std::vector<BigInt> mono(m + 1, 0);
  for (int a = 0; a <= m; ++a) {
    if (poly.coeff[a] == 0) continue;
    // p^a (1-p)^(m-a) = sum_j C(m-a, j) (-1)^j p^(a+j)
    for (int j = 0; j + a <= m; ++j) {
      BigInt term = binomial(m - a, j) * poly.coeff[a];
      if (j % 2 == 1) term = -term;
      mono[a + j] += term;
    }
  }
  std::complex<double> acc = 0.0;
  for (int k = m; k >= 0; --k) {
    acc = acc * z + static_cast<double>(mono[k]);
  }
  return acc;
}

}  // namespace

TEST_CASE("star window connection polynomial") {
  auto w = ball(z2(), 1);
  REQUIRE(w.num_edges() == 4);
  auto poly = exact_event_polynomial(w, connect_event(w));
  CHECK(poly.coeff == std::vector<BigInt>{0, 4, 6, 4, 1});  // 1 - (1-p)^4

  CHECK(evaluate(poly, BigRational(1, 2)) == BigRational(15, 16));
  CHECK(evaluate(poly, BigRational(1)) == 1);
  CHECK(evaluate(poly, BigRational(0)) == 0);
  CHECK(evaluate(poly, 0.25) == doctest::Approx(1 - std::pow(0.75, 4)));
}

TEST_CASE("always-true predicate gives binomial coefficients") {
  auto w = ball(z2(), 1);
  auto poly = exact_event_polynomial(w, [](std::uint64_t) { return true; });
  for (int a = 0; a <= poly.m; ++a) CHECK(poly.coeff[a] == binomial(poly.m, a));
}

TEST_CASE("edge cap is enforced") {
  auto w = ball(z2(), 3);  // 24 edges
  REQUIRE(w.num_edges() > kOracleEdgeCap);
  CHECK_THROWS_AS(exact_event_polynomial(w, [](std::uint64_t) { return true; }),
                  ResourceLimitError);
}

TEST_CASE("complement identity") {
  auto w = ball(z2(), 2);
  auto yes = exact_event_polynomial(w, connect_event(w));
  auto no = exact_event_polynomial(
      w, [&](std::uint64_t mask) { return !connect_event(w)(mask); });
  auto all = exact_event_polynomial(w, [](std::uint64_t) { return true; });
  EventPolynomial sum = yes;
  sum += no;
  CHECK(sum == all);
}

TEST_CASE("increasing event evaluates monotonically on a 101-point grid") {
  auto w = ball(z2(), 2);
  auto poly = exact_event_polynomial(w, connect_event(w));
  double prev = -1.0;
  for (int i = 0; i <= 100; ++i) {
    double v = evaluate(poly, i / 100.0);
    CHECK(v >= prev - 1e-12);
    CHECK(v >= -1e-12);
    CHECK(v <= 1.0 + 1e-12);
    prev = v;
  }
}

TEST_CASE("double-implementation oracle for the truncated two-point event") {
  // Path window: Z with radius 3 has 7 vertices and 6 edges.
  auto w = ball(GraphSpec::parse("inf"), 3);
  REQUIRE(w.num_edges() == 6);
  const int u = w.index_of({0}), v = w.index_of({2});

  auto via_labeling = exact_event_polynomial(w, [&](std::uint64_t mask) {
    auto c = configuration_from_mask(w, mask);
    auto lab = label_clusters(c);
    return lab.cluster_of(u) == lab.cluster_of(v) &&
           !lab.touches_boundary[lab.cluster_of(u)];
  });
  // Second implementation: on the path, u <-> v truncated means the maximal
  // open run through u covers v and stops before either boundary vertex.
  auto via_runs = exact_event_polynomial(w, [&](std::uint64_t mask) {
    auto open_between = [&](const Coord& a, const Coord& b) {
      for (int e = 0; e < w.num_edges(); ++e) {
        auto [x, y] = w.edges[e];
        if ((w.coords[x] == a && w.coords[y] == b) ||
            (w.coords[x] == b && w.coords[y] == a)) {
          return ((mask >> e) & 1) != 0;
        }
      }
      return false;
    };
    int lo = 0;
    while (lo > -3 && open_between({lo}, {lo - 1})) --lo;
    int hi = 0;
    while (hi < 3 && open_between({hi}, {hi + 1})) ++hi;
    return hi >= 2 && lo > -3 && hi < 3;
  });
  CHECK(via_labeling == via_runs);
}

TEST_CASE("complex evaluation matches the monomial basis") {
  auto w = ball(z2(), 1);
  auto poly = exact_event_polynomial(w, connect_event(w));
  for (auto z : {std::complex<double>{0.5, 0.1},
                 std::complex<double>{0.7, 0.05},
                 std::complex<double>{0.2, -0.3}}) {
    CHECK(std::abs(evaluate(poly, z) - monomial_eval(poly, z)) < 1e-12);
  }

  auto w2 = ball(z2(), 2);
  auto poly2 = exact_event_polynomial(w2, connect_event(w2));
  const std::complex<double> z2c{0.5, 0.1};
  CHECK(std::abs(evaluate(poly2, z2c) - monomial_eval(poly2, z2c)) < 1e-10);
}

TEST_CASE("Monte Carlo estimates agree with the exact polynomial") {
  auto w = ball(z2(), 1);
  auto poly = exact_event_polynomial(w, connect_event(w));
  for (double p : {0.25, 0.5, 0.75}) {
    auto est = connection_estimate(z2(), p, 1, 100000, 777);
    double truth = evaluate(poly, p);
    CHECK(std::abs(est.estimate - truth) <= 4 * est.std_error + 1e-9);
  }
}

TEST_CASE("inclusion-exclusion report on the toy window") {
  auto w = ball(z2(), 2);
  REQUIRE(w.num_edges() <= kOracleEdgeCap);
  auto report = verify_inclusion_exclusion(w, 1, 2, 6);

  CHECK(report.identity_holds);
  CHECK(report.unconditioned_identity_holds);
  CHECK(report.theta_identity_holds);
  CHECK_FALSE(report.has_witness);
  CHECK(report.lhs == report.rhs);
  CHECK(report.lhs_unconditioned == report.rhs_unconditioned);

  // The unconditioned sides must reproduce P(some interface occurs) computed
  // from scratch.
  auto direct = exact_event_polynomial(w, [&](std::uint64_t mask) {
    auto c = configuration_from_mask(w, mask);
    return !occurring_interfaces(c, 1, 2).empty();
  });
  CHECK(report.lhs_unconditioned == direct);

  // d_event + connect + (D^c and not connect... ) -- the theta split:
  // 1 - connect = d_event + lhs coefficientwise.
  auto all = exact_event_polynomial(w, [](std::uint64_t) { return true; });
  EventPolynomial split = report.d_event;
  split += report.lhs;
  split += report.connect_event;
  CHECK(split == all);

  // Signed slices sum back to the full signed side once n_max covers every
  // possible multi-interface size (bad components can reach the whole
  // window, so take the vertex count).
  auto full = verify_inclusion_exclusion(w, 1, 2, w.num_vertices());
  EventPolynomial sum(w.num_edges());
  for (const auto& term : full.terms_by_size_unconditioned) sum += term;
  CHECK(sum == full.rhs_unconditioned);
  EventPolynomial cond_sum(w.num_edges());
  for (const auto& term : full.terms_by_size) cond_sum += term;
  CHECK(cond_sum == full.rhs);

  // Unsigned companions dominate the signed slices coefficient-wise in
  // absolute value at every evaluation point in [0, 1].
  for (std::size_t n = 0; n < report.terms_by_size_unconditioned.size(); ++n) {
    for (double p : {0.3, 0.5, 0.7}) {
      CHECK(std::abs(evaluate(report.terms_by_size_unconditioned[n], p)) <=
            evaluate(report.terms_by_size_unconditioned_abs[n], p) + 1e-12);
    }
  }
}

TEST_CASE("single-candidate windows make the signed sum a single term") {
  // Z window: interfaces are subsets of the line containing o; check that
  // lhs equals rhs there too and the report stays exact.
  auto w = ball(GraphSpec::parse("inf"), 4);
  auto report = verify_inclusion_exclusion(w, 1, 1, 3);
  CHECK(report.identity_holds);
  CHECK(report.unconditioned_identity_holds);
  CHECK(report.theta_identity_holds);
}
