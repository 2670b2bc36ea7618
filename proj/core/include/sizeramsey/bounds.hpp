#pragma once

// Closed forms, transcendental equations, tail bounds and first-moment
// evaluators behind the size-Ramsey upper and lower bounds. Logarithms are
// natural; 0 log 0 is taken as 0. Finite-n counts are evaluated exactly in
// log scale through lgamma rather than via Stirling asymptotics.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>

namespace sizeramsey {

enum class BoundTheorem {
  binomial_expansion,   // G((c+1)n, d/n), sets of size cn/2
  regular_expansion,    // random d-regular graph on 2n vertices
  nonzero_crossing,     // G(2(cn-1), d/n), no empty (S,T)
  lower_bound_two_case, // constants a, b, d of the 2.00365n lower bound
  cycle_closing,        // two-round bipartite construction of C_n
};

struct BoundParams {
  BoundTheorem theorem = BoundTheorem::binomial_expansion;
  double c = 1.0;
  double d = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double a = 0.0;
  double b = 0.0;
  double epsilon = 0.0;

  // Throws PreconditionError when outside the theorem's domain.
  void validate() const;
};

std::string to_string(BoundTheorem t);

struct TailBound {
  double mean = 0.0;
  double deviation = 0.0;
  double bound = 1.0;           // exp(-mean * phi(-t / mean))
  double gaussian_bound = 1.0;  // exp(-t^2 / (2 mean)), never smaller
};

// phi(x) = (1+x) log(1+x) - x for x > -1 (x = -1 allowed as the limit 1).
double chernoff_phi(double x);

// P(X <= E X - t) for binomial X; requires mean > 0, 0 <= t <= mean.
TailBound chernoff_lower_tail(double mean, double t);

// (c+1) log(c+1) + c log(d/2) - c^2 d / 4 + c.
double first_equation(double c, double d);

// Root of first_equation(c, .) above 4/c, to 1e-9 absolute.
double solve_d_first(double c);

// ceil(d(c) (c+1)^2 / 2).
long u1(double c);

// 40 log(e/c) / c, the explicit majorant of d(c) on (0, 1].
double d_hat(double c);

// ceil(80 log(e/c) / c) for c in (0, 1]; also checks d(c) < d_hat(c).
long u2(double c);

// 4/(c-1)^2 (2c log 2c - (c-1) log((c-1)/2) - (c+1) log(c+1)), c > 1.
double d_second(double c);
// 2 c^2 d_second(c).
double u3(double c);

// Exponent of the expected number of bad (S,T) pairs in the pairing model
// on 2n points-buckets of degree d: e(S,T) = an, e(S, rest) = bn.
double f_abd(double a, double b, double d);
// Analytic derivative of f_abd in b.
double df_db(double a, double b, double d);
// Maximiser of f_abd in b: d - a - sqrt(2d^2 - 4ad + 4a^2) / 2.
double b0(double a, double d);
double g_ad(double a, double d);

double log_factorial(double k);
double log_binomial(double n, double k);
// log of the number of perfect matchings on i points (i even).
double log_perfect_matchings(double i);

struct PairCountLog {
  double log_value = 0.0;  // log X(a, b)
  double per_n = 0.0;      // log X(a, b) / n
};

// Exact expected number of ordered disjoint (S, T), |S| = |T| = n/2, with
// e(S,T) = an and e(S, V \ (S u T)) = bn, in the pairing model with 2n
// buckets of d points. Parity and range violations throw PreconditionError.
PairCountLog expected_pair_count_regular(std::size_t n, std::size_t d,
                                         std::size_t an, std::size_t bn);

// log of C((c+1)n, cn/2) C((c+1)n - cn/2, cn/2) exp((c log(cd/4) - c^2 d/4 + c) n).
double first_moment_expansion(double c, double d, double n);

// log of C(2cn, k) C(2cn - k, k) (1 - d/n)^(k^2), k = (c-1)n/2.
double first_moment_bipartite_nonzero(double c, double d, double n);

// First grid point where fn drops below `level`.
std::optional<double> first_below(std::span<const double> grid,
                                  const std::function<double(double)>& fn,
                                  double level = 0.0);

struct Thm53Coefficients {
  double case1 = 0.0;  // 1 + (1 - (1-b) q)^-1, q = (1 - 2a/(d+1)) / (d^2+1)
  double case2 = 0.0;  // 2 + q (b (d-3)/2 - 1)
};

Thm53Coefficients thm53_coefficients(double a, double b, double d);

struct Sec6Report {
  double constraint1 = 0.0;  // path-finding constraint on d1
  double constraint2 = 0.0;  // chord-closing constraint on d2
  double objective = 0.0;    // (2c+1)^2 (d1 + d2) / 2
  bool feasible() const { return constraint1 <= 0.0 && constraint2 <= 0.0; }
};

Sec6Report sec6_feasibility(double c, double d1, double d2);

struct GridMinimum {
  double argument = 0.0;
  double value = 0.0;
};

// Minimum over lo, lo+step, ..., <= hi, then refined with refine_step
// around the best coarse point.
GridMinimum grid_minimize(const std::function<double(double)>& fn, double lo,
                          double hi, double step, double refine_step = 1e-4);

bool nondecreasing_on(std::span<const double> grid,
                      const std::function<double(double)>& fn);

}  // namespace sizeramsey
