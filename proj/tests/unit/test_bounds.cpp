#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "sizeramsey/bounds.hpp"
#include "sizeramsey/error.hpp"

using namespace sizeramsey;

namespace {

// Average over every pairing of 2n buckets x d points of the number of
// ordered (S, T), |S| = |T| = n/2, keyed by (e(S,T), e(S,R)).
std::map<std::pair<int, int>, double> enumerate_pair_counts(int n, int d) {
  const int buckets = 2 * n;
  const int points = buckets * d;
  std::vector<int> mate(points, -1);
  std::map<std::pair<int, int>, double> hist;
  double pairings = 0.0;
  std::vector<std::uint64_t> s_sets, t_sets;
  oracle::for_each_subset(buckets, n / 2, [&](std::uint64_t s) { s_sets.push_back(s); });
  std::function<void()> rec = [&] {
    int first = 0;
    while (first < points && mate[first] >= 0) ++first;
    if (first == points) {
      pairings += 1.0;
      for (auto s : s_sets)
        for (auto t : s_sets) {
          if (s & t) continue;
          int st = 0, sr = 0;
          for (int p = 0; p < points; ++p) {
            int q = mate[p];
            if (q < p) continue;
            int bp = p / d, bq = q / d;
            bool ps = (s >> bp) & 1, qs = (s >> bq) & 1, pt = (t >> bp) & 1, qt = (t >> bq) & 1;
            if ((ps && qt) || (qs && pt)) ++st;
            if ((ps && !qs && !qt) || (qs && !ps && !pt)) ++sr;
          }
          hist[{st, sr}] += 1.0;
        }
      return;
    }
    for (int q = first + 1; q < points; ++q) {
      if (mate[q] >= 0) continue;
      mate[first] = q;
      mate[q] = first;
      rec();
      mate[first] = mate[q] = -1;
    }
  };
  rec();
  for (auto& [key, value] : hist) value /= pairings;
  return hist;
}

}  // namespace

TEST_CASE("chernoff phi") {
  CHECK(chernoff_phi(0.0) == 0.0);
  CHECK(chernoff_phi(std::exp(1.0) - 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(chernoff_phi(-1.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(chernoff_phi(-1.5), PreconditionError);
  for (double x = -0.99; x < 5.0; x += 0.01) {
    CHECK(chernoff_phi(x) >= 0.0);
    CHECK(chernoff_phi(x - 0.005) + chernoff_phi(x + 0.005) >= 2.0 * chernoff_phi(x) - 1e-14);
  }
  for (double mean : {1.0, 10.0, 250.0})
    for (double frac = 0.0; frac <= 1.0; frac += 0.05) {
      auto tb = chernoff_lower_tail(mean, frac * mean);
      CHECK(tb.bound <= tb.gaussian_bound + 1e-15);
      CHECK(tb.bound <= 1.0);
      if (frac == 0.0) CHECK(tb.bound == 1.0);
    }
}

TEST_CASE("first root d(c)") {
  CHECK(solve_d_first(1.0) == doctest::Approx(18.43).epsilon(0.01 / 18.43));
  CHECK(solve_d_first(0.5) == doctest::Approx(42.11).epsilon(0.01 / 42.11));
  CHECK(solve_d_first(0.1) == doctest::Approx(279.54).epsilon(0.01 / 279.54));
  for (double c = 0.05; c <= 3.0; c += 0.05) {
    const double d = solve_d_first(c);
    CHECK(d > 4.0 / c);
    CHECK(std::abs(first_equation(c, d)) < 1e-5);
    if (c <= 1.0) CHECK(d < d_hat(c));
  }
}

TEST_CASE("U1 and U2 columns") {
  CHECK(u1(1.0) == 37);
  CHECK(u1(0.6) == 44);
  CHECK(u1(0.1) == 170);
  CHECK(u2(1.0) == 80);
  CHECK(u2(0.5) == 271);
  CHECK(u2(0.1) == 2643);
  CHECK_THROWS_AS(u2(1.5), PreconditionError);
  CHECK_THROWS_AS(u2(0.0), PreconditionError);
}

TEST_CASE("second approach") {
  CHECK(u3(2.5) < 91.0);
  CHECK(u3(2.5) == doctest::Approx(2.0 * 6.25 * d_second(2.5)));
  CHECK(d_second(1.001) > d_second(1.01));
  CHECK(d_second(1.01) > d_second(1.1));
  CHECK_THROWS_AS(d_second(1.0), PreconditionError);
  for (double c = 2.51; c <= 10.0; c += 0.01) CHECK(u3(c) > u3(2.5));
  auto best = grid_minimize([](double c) { return u3(c); }, 1.01, 10.0, 0.01);
  CHECK(best.argument >= 2.3);
  CHECK(best.argument <= 2.8);
  CHECK(best.value < 91.0);
}

TEST_CASE("pairing exponent f, b0, g") {
  const double a = 1.0, d = 31.0;
  const double b = b0(a, d);
  auto f = [&](double x) { return f_abd(a, x, d); };
  CHECK(std::abs(oracle::central_difference(f, b, 1e-4)) < 1e-6);
  for (double x : {b - 3.0, b - 1.0, b + 0.5, b + 2.0})
    CHECK(df_db(a, x, d) == doctest::Approx(oracle::central_difference(f, x, 1e-5)).epsilon(1e-6));
  CHECK(g_ad(1.0, 31.0) < -0.02);
  double prev = g_ad(0.01, 31.0);
  for (int k = 2; k <= 100; ++k) {
    double cur = g_ad(k / 100.0, 31.0);
    CHECK(cur >= prev);
    prev = cur;
  }
  CHECK(std::isfinite(f_abd(0.0, 0.0, 31.0)));
  CHECK_THROWS_AS(f_abd(1.0, 40.0, 31.0), DomainError);
}

TEST_CASE("log gamma helpers agree with exact factorials") {
  for (int k = 0; k <= 20; ++k)
    CHECK(std::exp(log_factorial(k)) == doctest::Approx(oracle::factorial(k)).epsilon(1e-12));
  for (int n = 0; n <= 20; ++n)
    for (int k = 0; k <= n; ++k)
      CHECK(std::exp(log_binomial(n, k)) == doctest::Approx(oracle::binomial(n, k)).epsilon(1e-12));
  // M(i) = i! / ((i/2)! 2^(i/2)).
  for (int i = 0; i <= 20; i += 2)
    CHECK(std::exp(log_perfect_matchings(i)) ==
          doctest::Approx(oracle::factorial(i) / (oracle::factorial(i / 2) * std::pow(2.0, i / 2)))
              .epsilon(1e-12));
}

TEST_CASE("expected pair count matches full pairing enumeration") {
  for (auto [n, d] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {2, 3}, {4, 1}}) {
    auto hist = enumerate_pair_counts(n, d);
    double total = 0.0;
    for (auto [key, expected] : hist) {
      auto x = expected_pair_count_regular(n, d, key.first, key.second);
      CHECK(std::exp(x.log_value) == doctest::Approx(expected).epsilon(1e-9));
      total += expected;
    }
    // Every ordered (S,T) lands somewhere.
    CHECK(total == doctest::Approx(oracle::binomial(2 * n, n / 2) * oracle::binomial(2 * n - n / 2, n / 2)));
  }
  CHECK_THROWS_AS(expected_pair_count_regular(3, 2, 0, 0), PreconditionError);
  CHECK_THROWS_AS(expected_pair_count_regular(4, 1, 3, 0), PreconditionError);
}

TEST_CASE("first moment evaluators") {
  CHECK(first_moment_expansion(1.0, 25.0, 1000.0) < 0.0);
  CHECK(first_moment_expansion(1.0, 4.0, 1000.0) > 0.0);
  const double d1 = solve_d_first(1.0);
  const double scaled = first_moment_expansion(1.0, d1, 4000.0) / 4000.0;
  CHECK(scaled < 0.0);
  CHECK(scaled > -0.01);
  CHECK(first_moment_bipartite_nonzero(2.0, 0.0, 100.0) >= 0.0);
  CHECK(first_moment_bipartite_nonzero(2.0, d_second(2.0) + 1.0, 500.0) < 0.0);
  CHECK(first_moment_bipartite_nonzero(2.0, d_second(2.0), 2000.0) / 2000.0 < 1e-2);
  CHECK_THROWS_AS(first_moment_bipartite_nonzero(2.0, 10.0, 10.0), PreconditionError);
  std::vector<double> grid{100, 200, 400, 800, 1600};
  auto hit = first_below(grid, [](double n) { return first_moment_expansion(1.0, 25.0, n); });
  REQUIRE(hit);
  CHECK(first_moment_expansion(1.0, 25.0, *hit) < 0.0);
}

TEST_CASE("two case constants") {
  auto c = thm53_coefficients(2.0037, 0.5, 9.0);
  CHECK(c.case1 > 2.00366);
  CHECK(c.case2 > 2.00365);
  CHECK(thm53_coefficients(2.0037, 1.0, 9.0).case1 == 2.0);
  auto worse = thm53_coefficients(2.0037, 0.5, 8.0);
  CHECK((worse.case1 <= 2.00366 || worse.case2 <= 2.00365));
  CHECK_THROWS_AS(thm53_coefficients(2.0, 0.5, 3.0), PreconditionError);
}

TEST_CASE("cycle closing feasibility") {
  auto r = sec6_feasibility(2.21, 60.34, 93.26);
  CHECK(r.constraint1 <= 0.0);
  CHECK(r.constraint2 <= 0.0);
  CHECK(r.objective < 2257.0);
  CHECK(r.feasible());
  CHECK(sec6_feasibility(2.21, 0.0, 93.26).constraint1 > 0.0);
  CHECK(sec6_feasibility(2.21, 50.0, 93.26).constraint1 > 0.0);
  CHECK(sec6_feasibility(2.21, 60.34, 1e6).constraint2 < 0.0);
  CHECK_THROWS_AS(sec6_feasibility(1.5, 60.0, 90.0), PreconditionError);
}

TEST_CASE("bound params validation") {
  BoundParams p;
  p.theorem = BoundTheorem::regular_expansion;
  p.c = 1.0;
  p.d = 31.0;
  CHECK_NOTHROW(p.validate());
  p.theorem = BoundTheorem::nonzero_crossing;
  CHECK_THROWS_AS(p.validate(), PreconditionError);
  CHECK(to_string(BoundTheorem::cycle_closing) == "cycle_closing");
}
