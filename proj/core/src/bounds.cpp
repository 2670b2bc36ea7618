#include "sizeramsey/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sizeramsey/error.hpp"

namespace sizeramsey {

namespace {

constexpr double kLog2 = std::numbers::ln2;
constexpr double kE = std::numbers::e;

// x log x with the 0 log 0 = 0 convention; `term` names the offending
// expression in error messages.
double xlogx(double x, const char* term) {
  if (x < 0.0) {
    if (x > -1e-12) return 0.0;
    throw DomainError(std::string("negative argument in ") + term + ": " +
                      std::to_string(x));
  }
  return x == 0.0 ? 0.0 : x * std::log(x);
}

// Ceiling that ignores round-off just above an integer.
long ceil_tolerant(double x) { return static_cast<long>(std::ceil(x - 1e-9)); }

}  // namespace

std::string to_string(BoundTheorem t) {
  switch (t) {
    case BoundTheorem::binomial_expansion: return "binomial_expansion";
    case BoundTheorem::regular_expansion: return "regular_expansion";
    case BoundTheorem::nonzero_crossing: return "nonzero_crossing";
    case BoundTheorem::lower_bound_two_case: return "lower_bound_two_case";
    case BoundTheorem::cycle_closing: return "cycle_closing";
  }
  return "unknown";
}

void BoundParams::validate() const {
  switch (theorem) {
    case BoundTheorem::binomial_expansion:
      require(c > 0.0 && d > 4.0 / c, "binomial expansion needs c > 0 and d > 4/c");
      break;
    case BoundTheorem::regular_expansion:
      require(d >= 1.0 && a >= 0.0 && a <= 1.0,
              "regular expansion needs d >= 1 and 0 <= a <= 1");
      break;
    case BoundTheorem::nonzero_crossing:
      require(c > 1.0 && d >= 0.0, "nonzero crossing needs c > 1");
      break;
    case BoundTheorem::lower_bound_two_case:
      require(d >= 4.0, "two-case lower bound needs d >= 4");
      break;
    case BoundTheorem::cycle_closing:
      require(c > 1.5 && d1 >= 0.0 && d2 >= 0.0, "cycle closing needs c > 3/2");
      break;
  }
  require(epsilon >= 0.0, "slack epsilon must be nonnegative");
}

// ---------------------------------------------------------------- Chernoff

double chernoff_phi(double x) {
  require(x >= -1.0, "phi is defined for x >= -1");
  if (x == -1.0) return 1.0;
  // phi >= 0; the clamp only absorbs cancellation near x = 0.
  return std::max(0.0, (1.0 + x) * std::log1p(x) - x);
}

TailBound chernoff_lower_tail(double mean, double t) {
  require(mean > 0.0, "tail bound needs a positive mean");
  require(t >= 0.0 && t <= mean, "deviation must lie in [0, mean]");
  TailBound out;
  out.mean = mean;
  out.deviation = t;
  out.bound = std::exp(-mean * chernoff_phi(-t / mean));
  out.gaussian_bound = std::exp(-t * t / (2.0 * mean));
  return out;
}

// ------------------------------------------------------- binomial, first

double first_equation(double c, double d) {
  require(c > 0.0 && d > 0.0, "first equation needs c, d > 0");
  return (c + 1.0) * std::log(c + 1.0) + c * std::log(d / 2.0) - c * c * d / 4.0 + c;
}

double solve_d_first(double c) {
  require(c > 0.0, "d(c) needs c > 0");
  double lo = 4.0 / c + 1e-9;
  double hi = 4.0 / c + 1e4;
  // Decreasing in d past 4/c; positive at lo for every c > 0.
  while (first_equation(c, hi) > 0.0) hi = 4.0 / c + 2.0 * (hi - 4.0 / c);
  require(first_equation(c, lo) > 0.0, "no sign change for d(c)");
  while (hi - lo > 1e-9) {
    double mid = 0.5 * (lo + hi);
    (first_equation(c, mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

long u1(double c) {
  const double d = solve_d_first(c);
  return ceil_tolerant(d * (c + 1.0) * (c + 1.0) / 2.0);
}

double d_hat(double c) {
  require(c > 0.0 && c <= 1.0, "explicit bound needs c in (0, 1]");
  return 40.0 * std::log(kE / c) / c;
}

long u2(double c) {
  const double dh = d_hat(c);
  const double d = solve_d_first(c);
  if (!(d < dh))
    throw std::logic_error("d(c) = " + std::to_string(d) +
                           " is not below 40 log(e/c)/c = " + std::to_string(dh));
  return ceil_tolerant(2.0 * dh);
}

// ------------------------------------------------------- binomial, second

double d_second(double c) {
  require(c > 1.0, "second-approach d(c) needs c > 1");
  const double cm = c - 1.0;
  return 4.0 / (cm * cm) *
         (xlogx(2.0 * c, "2c log 2c") - cm * std::log(cm / 2.0) -
          xlogx(c + 1.0, "(c+1) log(c+1)"));
}

double u3(double c) { return 2.0 * c * c * d_second(c); }

// ------------------------------------------------------------ pairing model

double f_abd(double a, double b, double d) {
  return (3.0 - 3.0 * d + a + b) * kLog2 + xlogx(d, "d log d") - xlogx(a, "a log a") -
         xlogx(b, "b log b") - xlogx(d / 2.0 - a, "(d/2-a) log(d/2-a)") -
         xlogx(d - b, "(d-b) log(d-b)") -
         xlogx(d / 4.0 - a / 2.0 - b / 2.0, "(d/4-a/2-b/2) log(d/4-a/2-b/2)") -
         xlogx(3.0 * d / 4.0 - a / 2.0 - b / 2.0, "(3d/4-a/2-b/2) log(3d/4-a/2-b/2)") +
         xlogx(3.0 * d / 2.0 - a - b, "(3d/2-a-b) log(3d/2-a-b)");
}

double df_db(double a, double b, double d) {
  require(b > 0.0 && d - b > 0.0 && d / 4.0 - a / 2.0 - b / 2.0 > 0.0,
          "df/db needs every logarithm argument positive");
  return kLog2 - std::log(b) + std::log(d - b) +
         std::log(d / 4.0 - a / 2.0 - b / 2.0) / 2.0 +
         std::log(3.0 * d / 4.0 - a / 2.0 - b / 2.0) / 2.0 - std::log(3.0 * d / 2.0 - a - b);
}

double b0(double a, double d) {
  const double disc = 2.0 * d * d - 4.0 * a * d + 4.0 * a * a;
  if (disc < 0.0) throw DomainError("negative discriminant in b0");
  return d - a - std::sqrt(disc) / 2.0;
}

double g_ad(double a, double d) { return f_abd(a, b0(a, d), d); }

double log_factorial(double k) {
  require(k >= 0.0, "factorial of a negative number");
  return std::lgamma(k + 1.0);
}

double log_binomial(double n, double k) {
  require(k >= 0.0 && k <= n, "binomial needs 0 <= k <= n");
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double log_perfect_matchings(double i) {
  require(i >= 0.0 && std::fmod(i, 2.0) == 0.0, "perfect matchings need an even count");
  return log_factorial(i) - log_factorial(i / 2.0) - (i / 2.0) * kLog2;
}

PairCountLog expected_pair_count_regular(std::size_t n, std::size_t d,
                                         std::size_t an, std::size_t bn) {
  require(n >= 2 && n % 2 == 0, "n must be even so that |S| = |T| = n/2");
  require((d * n) % 2 == 0, "dn must be even");
  const std::size_t s_points = d * n / 2;  // points in S (and in T)
  const std::size_t r_points = d * n;      // points in the remaining n buckets
  require(an <= s_points, "an exceeds the points available in S");
  require(bn <= s_points - an, "bn exceeds the points left in S");
  const std::size_t s_inner = s_points - an - bn;
  const std::size_t tr_inner = (s_points - an) + (r_points - bn);
  require(s_inner % 2 == 0, "points left inside S must be even");
  require(tr_inner % 2 == 0, "points left in T and the rest must be even");

  auto f = [](std::size_t x) { return static_cast<double>(x); };
  double lx = log_binomial(f(2 * n), f(n)) + log_binomial(f(n), f(n / 2)) +
              2.0 * log_binomial(f(s_points), f(an)) + log_factorial(f(an)) +
              log_binomial(f(s_points - an), f(bn)) + log_binomial(f(r_points), f(bn)) +
              log_factorial(f(bn)) + log_perfect_matchings(f(s_inner)) +
              log_perfect_matchings(f(tr_inner)) - log_perfect_matchings(f(2 * d * n));
  return {lx, lx / f(n)};
}

// ------------------------------------------------------------ first moments

double first_moment_expansion(double c, double d, double n) {
  require(c > 0.0 && d > 0.0 && n > 0.0, "first moment needs c, d, n > 0");
  const double total = (c + 1.0) * n;
  const double k = c * n / 2.0;
  return log_binomial(total, k) + log_binomial(total - k, k) +
         (c * std::log(c * d / 4.0) - c * c * d / 4.0 + c) * n;
}

double first_moment_bipartite_nonzero(double c, double d, double n) {
  require(c > 1.0, "nonzero-crossing bound needs c > 1");
  require(d >= 0.0, "d must be nonnegative");
  require(d < n, "d/n must be below 1");
  const double total = 2.0 * c * n;
  const double k = (c - 1.0) * n / 2.0;
  return log_binomial(total, k) + log_binomial(total - k, k) + k * k * std::log1p(-d / n);
}

std::optional<double> first_below(std::span<const double> grid,
                                  const std::function<double(double)>& fn,
                                  double level) {
  for (double x : grid)
    if (fn(x) < level) return x;
  return std::nullopt;
}

// ------------------------------------------------------------- lower bound

Thm53Coefficients thm53_coefficients(double a, double b, double d) {
  require(d >= 4.0, "two-case lower bound needs d >= 4");
  const double q = (1.0 - 2.0 * a / (d + 1.0)) / (d * d + 1.0);
  const double denom = 1.0 - (1.0 - b) * q;
  if (std::abs(denom) < 1e-15) throw DomainError("degenerate case-1 denominator");
  return {1.0 + 1.0 / denom, 2.0 + q * (b * (d - 3.0) / 2.0 - 1.0)};
}

// ---------------------------------------------------------- cycle closing

Sec6Report sec6_feasibility(double c, double d1, double d2) {
  require(c > 1.5, "cycle-closing constraints need c > 3/2");
  const double lo = c - 1.5;
  const double hi = c + 1.5;
  const double lead = xlogx(2.0 * c + 1.0, "(2c+1) log(2c+1)");
  Sec6Report r;
  r.constraint1 = lead - lo * std::log(lo / 2.0) - hi * std::log(hi / 2.0) - lo * lo * d1 / 4.0;
  r.constraint2 = lead - xlogx(c, "c log c") * 2.0 + kLog2 / 4.0 - d2 / 16.0;
  r.objective = (2.0 * c + 1.0) * (2.0 * c + 1.0) * (d1 + d2) / 2.0;
  return r;
}

// -------------------------------------------------------------------- grids

GridMinimum grid_minimize(const std::function<double(double)>& fn, double lo,
                          double hi, double step, double refine_step) {
  require(step > 0.0 && hi >= lo, "grid needs step > 0 and hi >= lo");
  GridMinimum best{lo, fn(lo)};
  const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  for (long k = 1; k <= count; ++k) {
    double x = lo + static_cast<double>(k) * step;
    double y = fn(x);
    if (y < best.value) best = {x, y};
  }
  if (refine_step > 0.0 && refine_step < step) {
    const double from = std::max(lo, best.argument - step);
    const double to = std::min(hi, best.argument + step);
    const auto fine = static_cast<long>(std::floor((to - from) / refine_step + 1e-9));
    for (long k = 0; k <= fine; ++k) {
      double x = from + static_cast<double>(k) * refine_step;
      double y = fn(x);
      if (y < best.value) best = {x, y};
    }
  }
  return best;
}

bool nondecreasing_on(std::span<const double> grid,
                      const std::function<double(double)>& fn) {
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (fn(grid[i]) < fn(grid[i - 1])) return false;
  return true;
}

}  // namespace sizeramsey
