// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails or overruns its time limit.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "harness.hpp"
#include "oracles.hpp"
#include "sizeramsey/arrowing.hpp"
#include "sizeramsey/bounds.hpp"
#include "sizeramsey/coloring.hpp"
#include "sizeramsey/random.hpp"

using namespace sizeramsey;

namespace {

struct Outcome {
  bool pass = true;
  std::string details;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      if (pass) details.clear();
      pass = false;
      details += (details.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& what) {
    if (pass) details += (details.empty() ? "" : "; ") + what;
  }
};

std::string num(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

int failures = 0;

void run(int id, const char* title, double limit_ms, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.pass = false;
    out.details = std::string("exception: ") + e.what();
  }
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (ms > limit_ms) out.expect(false, "runtime " + num(ms, 4) + " ms over limit " + num(limit_ms, 4) + " ms");
  if (!out.pass) ++failures;
  std::printf("[%s] %2d %s (%s ms, limit %s ms): %s\n", out.pass ? "PASS" : "FAIL", id, title,
              num(ms, 4).c_str(), num(limit_ms, 4).c_str(), out.details.c_str());
  std::fflush(stdout);
}

Graph from_mask(std::size_t n, const std::vector<Edge>& all, std::uint64_t mask) {
  std::vector<Edge> es;
  for (std::size_t i = 0; i < all.size(); ++i)
    if ((mask >> i) & 1) es.push_back(all[i]);
  return Graph(n, es);
}

// Criterion 1 ------------------------------------------------------------
Outcome table1() {
  Outcome o;
  auto rows = cli::table1_rows();
  auto bad = cli::table1_mismatches(rows);
  o.expect(rows.size() == 10, "row count " + std::to_string(rows.size()));
  for (const auto& line : bad) o.expect(false, line);
  std::stringstream csv;
  cli::write_table1_csv(csv, rows);
  auto back = cli::read_table1_csv(csv);
  o.expect(back.size() == rows.size(), "csv round trip row count");
  for (std::size_t i = 0; i < std::min(back.size(), rows.size()); ++i)
    o.expect(std::abs(back[i].d_printed - rows[i].d_printed) < 1e-9 && back[i].u1 == rows[i].u1 &&
                 back[i].u2 == rows[i].u2,
             "csv round trip row " + std::to_string(i));
  o.note("30 cells match (tolerance 0.005 on d, exact U1/U2); d(1.0)=" + num(rows[0].d_root) +
         ", d(0.1)=" + num(rows[9].d_root));
  return o;
}

// Criterion 2 ------------------------------------------------------------
Outcome theorem34() {
  Outcome o;
  const double g = g_ad(1.0, 31.0);
  o.expect(g < -0.02, "g(1,31) = " + num(g));
  double prev = g_ad(0.01, 31.0);
  for (int k = 2; k <= 100; ++k) {
    const double cur = g_ad(k / 100.0, 31.0);
    o.expect(cur >= prev, "g decreases at a=" + num(k / 100.0));
    prev = cur;
  }
  const double b = b0(1.0, 31.0);
  const double fd = oracle::central_difference([](double x) { return f_abd(1.0, x, 31.0); }, b, 1e-4);
  o.expect(std::abs(fd) < 1e-6, "df/db at b0 = " + num(fd));
  o.note("g(1,31)=" + num(g) + ", nondecreasing on 100 grid points, |df/db(b0)|=" + num(std::abs(fd), 3));
  return o;
}

// Criterion 3 ------------------------------------------------------------
Outcome theorem44() {
  Outcome o;
  const double at = u3(2.5);
  o.expect(at < 91.0, "u3(2.5) = " + num(at));
  double best_c = 0.0, best = INFINITY;
  for (int k = 101; k <= 1000; ++k) {
    const double c = k / 100.0;
    const double v = u3(c);
    if (v < best) {
      best = v;
      best_c = c;
    }
  }
  o.expect(best_c >= 2.3 && best_c <= 2.8, "grid argmin c = " + num(best_c));
  o.expect(best < 91.0, "grid min = " + num(best));
  o.note("u3(2.5)=" + num(at) + ", grid min " + num(best) + " at c=" + num(best_c));
  return o;
}

// Criterion 4 ------------------------------------------------------------
Outcome theorem53() {
  Outcome o;
  auto c = thm53_coefficients(2.0037, 0.5, 9.0);
  o.expect(c.case1 > 2.00366, "case1 = " + num(c.case1, 10));
  o.expect(c.case2 > 2.00365, "case2 = " + num(c.case2, 10));
  o.note("case1=" + num(c.case1, 10) + ", case2=" + num(c.case2, 10));
  return o;
}

// Criterion 5 ------------------------------------------------------------
Outcome section6() {
  Outcome o;
  auto r = sec6_feasibility(2.21, 60.34, 93.26);
  o.expect(r.constraint1 <= 0.0, "constraint1 = " + num(r.constraint1));
  o.expect(r.constraint2 <= 0.0, "constraint2 = " + num(r.constraint2));
  o.expect(r.objective < 2257.0, "objective = " + num(r.objective));
  auto p = sec6_feasibility(2.21, 50.0, 93.26);
  o.expect(p.constraint1 > 0.0, "d1=50 constraint1 = " + num(p.constraint1));
  o.note("constraints " + num(r.constraint1, 3) + ", " + num(r.constraint2, 3) + "; objective " +
         num(r.objective, 7) + "; d1=50 gives " + num(p.constraint1, 3));
  return o;
}

// Criterion 6 ------------------------------------------------------------
Outcome exact_vs_formula() {
  Outcome o;
  const auto q = ArrowQuery::cycles_vs_clique(5, 3);
  o.expect(ramsey_cycles_vs_clique(3, 5) == 5, "formula gives " + std::to_string(ramsey_cycles_vs_clique(3, 5)));
  auto k5 = arrows_exact(Graph::complete(5), q);
  auto k4 = arrows_exact(Graph::complete(4), q);
  o.expect(k5.arrows, "K5 does not arrow");
  o.expect(k5.colorings_checked == 1024, "K5 checked " + std::to_string(k5.colorings_checked));
  o.expect(!k4.arrows, "K4 arrows");
  o.expect(k4.counterexample && !has_red_member(Graph::complete(4), *k4.counterexample, q) &&
               !has_blue_target(Graph::complete(4), *k4.counterexample, q),
           "K4 counterexample invalid");
  // Independent backtracking decider on both graphs.
  o.expect(oracle::arrows_backtrack(5, oracle::edge_list(Graph::complete(5)), 5, 3, true),
           "oracle: K5 does not arrow");
  o.expect(!oracle::arrows_backtrack(4, oracle::edge_list(Graph::complete(4)), 5, 3, true),
           "oracle: K4 arrows");
  o.note("R=5; K5 arrows over 2^10 colorings, K4 defeated by coloring " +
         (k4.counterexample ? k4.counterexample->to_hex() : std::string("?")));
  return o;
}

// Criterion 7 ------------------------------------------------------------
Outcome lower_bound_consistency() {
  Outcome o;
  auto tri = min_size_ramsey_exact(ArrowQuery::cycles_vs_path(3, 2), 4);
  o.expect(tri.found && tri.edges == 3, "(C<=3,P2) minimum " + std::to_string(tri.edges));
  auto tri_cycle = tri.found ? has_cycle_at_most(tri.witness, 3) : std::nullopt;
  o.expect(tri.found && tri.witness.edge_count() == 3 && tri_cycle && tri_cycle->size() == 3,
           "witness is not a triangle");
  // Every graph on 4 vertices with fewer than 3 edges is defeated by the
  // spanning-tree coloring.
  const auto all = Graph::complete(4).edges();
  std::size_t defeated = 0;
  for (std::uint64_t mask = 0; mask < (1u << all.size()); ++mask) {
    if (std::popcount(mask) >= 3) continue;
    Graph g = from_mask(4, all, mask);
    auto col = spanning_tree_strategy(g);
    const auto q = ArrowQuery::cycles_vs_path(3, 2);
    bool ok = !has_red_member(g, col, q) && !has_blue_target(g, col, q);
    o.expect(ok, "spanning tree coloring fails on mask " + std::to_string(mask));
    defeated += ok;
  }
  // (C<=L, P3): minimum found within 6 vertices, and no graph with at most
  // 3 edges on 6 vertices arrows.
  std::string p3;
  const auto all6 = Graph::complete(6).edges();
  for (std::size_t cap : {3u, 4u, 5u, 6u}) {
    const auto q = ArrowQuery::cycles_vs_path(cap, 3);
    auto r = min_size_ramsey_exact(q, 6);
    o.expect(!r.found || r.edges >= 4, "(C<=" + std::to_string(cap) + ",P3) found " + std::to_string(r.edges));
    o.expect(!r.found || arrows_exact(r.witness, q).arrows, "witness does not arrow");
    p3 += (p3.empty() ? "" : ",") + (r.found ? std::to_string(r.edges) : std::string("none"));
    for (std::uint64_t mask = 0; mask < (1u << all6.size()); ++mask) {
      if (std::popcount(mask) > 3) continue;
      Graph g = from_mask(6, all6, mask);
      o.expect(!arrows_exact(g, q).arrows, "small graph arrows (C<=L,P3)");
    }
  }
  o.note("(C<=3,P2) minimum 3 (triangle); " + std::to_string(defeated) +
         " graphs with <3 edges defeated; (C<=L,P3) minima for L=3..6 on <=6 vertices: " + p3);
  return o;
}

// Criterion 8 ------------------------------------------------------------
Outcome grower_certificates() {
  Outcome o;
  RandomSource base(8008);
  std::size_t certificates = 0, paths = 0;
  for (std::uint64_t k = 0; k < 1000; ++k) {
    RandomSource rng = base.substream(k);
    const std::size_t n = 20 + rng.uniform_below(41);
    const double p = 0.05 + 0.4 * rng.uniform01();
    Graph g = gnp(n, p, rng);
    auto col = random_coloring(g, 0.1 + 0.8 * rng.uniform01(), rng);
    const std::size_t target = 2 + rng.uniform_below(n / 2);
    const std::size_t s_min = rng.uniform_below(n / 3 + 1);
    const std::size_t t_min = rng.uniform_below(n / 3 + 1);
    std::size_t last = 0;
    bool monotone = true;
    auto out = grow_blue_path(g, col, {target, s_min, t_min}, [&](const GrowerState& st) {
      const std::size_t progress = (n - st.s_size) + st.t_size;
      if (progress <= last) monotone = false;
      last = progress;
    });
    o.expect(monotone, "progress not strictly monotone at instance " + std::to_string(k));
    if (out.found_path()) {
      ++paths;
      continue;
    }
    ++certificates;
    const auto& c = out.certificate();
    bool clean = c.s.disjoint(c.t) && c.s.size() >= s_min && c.t.size() >= t_min;
    for (EdgeIndex e = 0; e < g.edge_count() && clean; ++e) {
      if (!col.is_blue(e)) continue;
      auto [u, v] = g.edge(e);
      if ((c.s.contains(u) && c.t.contains(v)) || (c.s.contains(v) && c.t.contains(u))) clean = false;
    }
    o.expect(clean, "certificate scan failed at instance " + std::to_string(k));
  }
  o.expect(certificates > 0, "no certificate produced");
  o.note(std::to_string(certificates) + " certificates scanned clean, " + std::to_string(paths) +
         " paths; progress strictly monotone");
  return o;
}

// Criterion 9 ------------------------------------------------------------
Outcome strategies() {
  Outcome o;
  RandomSource base(9009);
  std::size_t case2 = 0;
  auto red_list = [](const Graph& g, const EdgeColoring& col) {
    oracle::EdgeList out;
    for (EdgeIndex e = 0; e < g.edge_count(); ++e)
      if (!col.is_blue(e)) out.emplace_back(g.edge(e).u, g.edge(e).v);
    return out;
  };
  for (std::uint64_t k = 0; k < 1000; ++k) {
    RandomSource rng = base.substream(k);
    const std::size_t n = 10 + rng.uniform_below(51);
    Graph g = gnp(n, 0.02 + 0.3 * rng.uniform01(), rng);
    const int ni = static_cast<int>(n);

    o.expect(oracle::is_forest(ni, red_list(g, spanning_tree_strategy(g))), "spanning tree red cycle");

    auto a = greedy_max_independent(square_graph(g), VertexSet::full(n));
    auto star = star_strategy(g, a);
    auto red = red_list(g, star);
    o.expect(oracle::is_forest(ni, red), "star red cycle");
    auto adj = oracle::matrix(ni, red);
    for (const auto& comp : oracle::component_lists(adj)) {
      int hubs = 0;
      for (int v : comp) {
        int deg = 0;
        for (int w = 0; w < ni; ++w) deg += adj[v][w];
        hubs += deg > 1;
      }
      o.expect(hubs <= 1, "star component with two hubs");
    }

    const std::size_t d_const = 2 + rng.uniform_below(8);
    auto tc = two_case_strategy(g, 2.0037, 0.5, d_const);
    o.expect(oracle::is_forest(ni, red_list(g, tc.coloring)), "two-case red cycle");
    std::size_t b_count = 0;
    for (Vertex v = 0; v < n; ++v) b_count += g.degree(v) >= d_const + 1;
    const int label = static_cast<double>(b_count) <= 0.5 * static_cast<double>(tc.a.size()) ? 1 : 2;
    o.expect(tc.case_label == label, "case label mismatch");
    case2 += tc.case_label == 2;
  }
  o.note("3000 red subgraphs acyclic, stars have one hub; case labels match (" +
         std::to_string(case2) + " in case 2)");
  return o;
}

// Criterion 10 -----------------------------------------------------------
Outcome pairing_model() {
  Outcome o;
  RandomSource rng(1010);
  const int trials = 10000;
  int simple = 0;
  bool regular = true;
  for (int t = 0; t < trials; ++t) {
    auto m = project(random_pairing(100, 3, rng));
    simple += m.is_simple();
    for (Vertex v = 0; v < 100 && regular; ++v) regular = m.degree(v) == 3;
  }
  const double freq = static_cast<double>(simple) / trials;
  o.expect(std::abs(freq - std::exp(-2.0)) <= 0.03, "simple frequency " + num(freq));
  o.expect(regular, "projected degree sequence not constant");
  o.note("simple frequency " + num(freq, 4) + " vs e^-2 = " + num(std::exp(-2.0), 4) +
         " (tolerance 0.03); all degree sequences 3-regular");
  return o;
}

// Criterion 11 -----------------------------------------------------------
Outcome counting_vs_simulation() {
  Outcome o;
  // Fixed S = buckets {0,1,2}, T = {3,4,5} among 12 buckets of 3 points.
  const int n = 6, d = 3, buckets = 12;
  const double ordered_pairs = oracle::binomial(12, 3) * oracle::binomial(9, 3);
  RandomSource rng(1111);
  const int draws = 100000;
  std::map<std::pair<int, int>, int> hist;
  for (int t = 0; t < draws; ++t) {
    auto p = random_pairing(buckets, d, rng);
    int st = 0, sr = 0;
    for (auto [x, y] : p.matching) {
      const auto bx = p.bucket(x), by = p.bucket(y);
      const bool xs = bx < 3, ys = by < 3, xt = bx >= 3 && bx < 6, yt = by >= 3 && by < 6;
      if ((xs && yt) || (ys && xt)) ++st;
      if ((xs && !ys && !yt) || (ys && !xs && !xt)) ++sr;
    }
    ++hist[{st, sr}];
  }
  int cells = 0;
  double worst = 0.0, mass = 0.0;
  const int s_points = d * n / 2;
  for (int an = 0; an <= s_points; ++an)
    for (int bn = 0; an + bn <= s_points; ++bn) {
      if ((s_points - an - bn) % 2 != 0) continue;
      const double prob = std::exp(expected_pair_count_regular(n, d, an, bn).log_value) / ordered_pairs;
      mass += prob;
      const double observed = hist.count({an, bn}) ? hist[{an, bn}] : 0.0;
      const double sd = std::sqrt(draws * prob * (1.0 - prob));
      const double z = sd > 0 ? std::abs(observed - draws * prob) / sd : (observed > 0 ? INFINITY : 0.0);
      o.expect(z <= 3.0, "cell (" + std::to_string(an) + "," + std::to_string(bn) + ") z=" + num(z, 3));
      if (z > worst) {
        worst = z;
      }
      ++cells;
    }
  for (auto [key, count] : hist)
    o.expect((s_points - key.first - key.second) % 2 == 0, "observed parity-violating cell");
  o.expect(std::abs(mass - 1.0) < 1e-9, "cell probabilities sum to " + num(mass, 12));

  // Convergence of (log X)/n to f along n = 20, 40, 80 at a = 1, b near b0.
  std::vector<double> gaps;
  const double b0v = b0(1.0, 31.0);
  std::string trail;
  for (std::size_t nn : {20u, 40u, 80u}) {
    const std::size_t an = nn;
    std::size_t bn = 2 * static_cast<std::size_t>(std::llround(b0v * nn / 2.0));
    if ((31 * nn / 2 - an - bn) % 2 != 0) ++bn;
    const double per_n = expected_pair_count_regular(nn, 31, an, bn).per_n;
    const double gap = std::abs(per_n - f_abd(1.0, static_cast<double>(bn) / nn, 31.0));
    gaps.push_back(gap);
    trail += (trail.empty() ? "" : ", ") + num(gap, 4);
  }
  o.expect(gaps[1] < gaps[0] && gaps[2] < gaps[1], "gaps not strictly decreasing: " + trail);
  o.note(std::to_string(cells) + " cells within 3 sigma (max z " + num(worst, 3) +
         ") over 1e5 pairings; |log X/n - f| at n=20,40,80: " + trail);
  return o;
}

// Criterion 12 -----------------------------------------------------------
Outcome cycle_closer() {
  Outcome o;
  const std::size_t n = 16, m = 3 * n / 4;
  std::set<std::pair<std::size_t, std::size_t>> left_seen, right_seen;
  for (std::size_t i = n / 4; i <= 3 * n / 4; i += 2) {
    auto cand = chord_candidates(n, i);
    for (auto p : cand.left) o.expect(left_seen.insert({p.first_pos, p.second_pos}).second, "left candidates overlap");
    for (auto p : cand.right) o.expect(right_seen.insert({p.first_pos, p.second_pos}).second, "right candidates overlap");
  }

  RandomSource base(1212);
  const std::size_t side = 36;  // round(2.21 * 16)
  std::size_t witnesses = 0, paths = 0;
  for (std::uint64_t k = 0; k < 1000; ++k) {
    RandomSource rng = base.substream(k);
    auto round1 = bipartite_gnp(side, side, 0.15 + 0.2 * rng.uniform01(), rng);
    auto round2 = bipartite_gnp(side, side, 0.05 + 0.5 * rng.uniform01(), rng);
    const Graph& g1 = round1.graph;
    auto grown = grow_blue_path(g1, EdgeColoring(g1, Color::blue), {3 * n, 0, g1.vertex_count()});
    if (!grown.found_path()) continue;
    ++paths;
    auto [p1, p2] = split_path_for_closing(grown.path(), n, round1.side);
    auto w = close_cycle(p1, p2, round2.graph, n);
    if (!w) continue;
    ++witnesses;
    // Independent re-validation.
    std::set<Vertex> distinct(w->cycle.begin(), w->cycle.end());
    o.expect(w->cycle.size() == n && distinct.size() == n, "cycle is not 16 distinct vertices");
    auto [c1, c2] = w->chords;
    o.expect(round2.graph.adjacent(c1.u, c1.v) && round2.graph.adjacent(c2.u, c2.v), "chord missing");
    const auto [l, big_l] = std::pair{w->left.first_pos, w->left.second_pos};
    const auto [r, big_r] = std::pair{w->right.first_pos, w->right.second_pos};
    const std::size_t i = w->left_length;
    o.expect(l < m && big_l < m && r > m && big_r > m, "chord positions on the wrong side");
    o.expect((m - l + 1) + (m - big_l) == i, "left index equation");
    o.expect((r - m + 1) + (big_r - m) == n - i, "right index equation");
    o.expect(i % 2 == 0 && i >= n / 4 && i <= 3 * n / 4, "i out of range");
    // Chord endpoints are the named path vertices (positions are 1-based).
    auto chord_is = [](Edge e, Vertex a, Vertex b) {
      return (e.u == a && e.v == b) || (e.u == b && e.v == a);
    };
    o.expect(chord_is(c1, p1[l - 1], p2[big_l - 1]) || chord_is(c2, p1[l - 1], p2[big_l - 1]),
             "left chord does not join v_l and u_L");
    o.expect(chord_is(c1, p1[r - 1], p2[big_r - 1]) || chord_is(c2, p1[r - 1], p2[big_r - 1]),
             "right chord does not join v_r and u_R");
    // Consecutive cycle vertices are joined by path steps or by the chords.
    std::size_t chord_steps = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const Vertex a = w->cycle[j], b = w->cycle[(j + 1) % n];
      auto step_on = [&](const std::vector<Vertex>& p) {
        for (std::size_t t = 0; t + 1 < p.size(); ++t)
          if ((p[t] == a && p[t + 1] == b) || (p[t] == b && p[t + 1] == a)) return true;
        return false;
      };
      if (step_on(p1) || step_on(p2)) continue;
      ++chord_steps;
      o.expect(chord_is(c1, a, b) || chord_is(c2, a, b), "cycle step is neither path nor chord");
    }
    o.expect(chord_steps == 2, "cycle uses " + std::to_string(chord_steps) + " chords");
  }
  o.expect(witnesses > 0, "no witness produced");
  o.note(std::to_string(witnesses) + " witnesses from " + std::to_string(paths) +
         " paths all re-validated; chord candidate sets disjoint across i");
  return o;
}

// Criterion 13 -----------------------------------------------------------
Outcome asymptotic_substitutes() {
  Outcome o;
  // The a.a.s. limits are not checked directly. What is checked: the first
  // moment bounds behind them have the signs the proofs need.
  for (double c : {0.5, 1.0, 2.0}) {
    const double d = solve_d_first(c);
    const double at_root = first_moment_expansion(c, d, 20000.0) / 20000.0;
    o.expect(at_root < 0.0 && at_root > -1e-2, "scaled exponent at d(c), c=" + num(c) + ": " + num(at_root));
    o.expect(first_moment_expansion(c, d * 1.3, 2000.0) < 0.0, "bound above d(c) not below 1, c=" + num(c));
    o.expect(first_moment_expansion(c, 4.0 / c, 2000.0) > 0.0, "boundary d=4/c not positive, c=" + num(c));
  }
  for (double c : {1.5, 2.0, 2.5}) {
    const double d = d_second(c);
    o.expect(first_moment_bipartite_nonzero(c, d * 1.3, 2000.0) < 0.0, "nonzero-crossing bound, c=" + num(c));
    o.expect(first_moment_bipartite_nonzero(c, 0.0, 2000.0) >= 0.0, "d=0 bound below 1");
  }
  o.note("not reproducible as limits; covered by criteria 8-12 and first-moment sign checks");
  return o;
}

}  // namespace

int main() {
  run(1, "Table 1 reproduction", 1000, table1);
  run(2, "Theorem 3.4 profile g(a,31)", 1000, theorem34);
  run(3, "U3 minimum near c=2.5", 1000, theorem44);
  run(4, "Theorem 5.3 constants", 1, theorem53);
  run(5, "cycle-closing feasibility", 1, section6);
  run(6, "exact oracle vs closed form", 1000, exact_vs_formula);
  run(7, "lower-bound consistency", 120000, lower_bound_consistency);
  run(8, "grower certificates", 10000, grower_certificates);
  run(9, "lower-bound strategies acyclic", 10000, strategies);
  run(10, "pairing model simplicity", 10000, pairing_model);
  run(11, "counting vs simulation", 30000, counting_vs_simulation);
  run(12, "cycle closer witnesses", 10000, cycle_closer);
  run(13, "a.a.s. statements via substitutes", 10000, asymptotic_substitutes);
  std::printf("%d of 13 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
