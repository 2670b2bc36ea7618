#include "sizeramsey/arrowing.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>
#include <unordered_set>

#include "sizeramsey/error.hpp"

namespace sizeramsey {

std::string ArrowQuery::describe() const {
  std::string red_part = red == RedFamily::cycles_at_most
                             ? "C<=" + std::to_string(cycle_length)
                             : "C" + std::to_string(cycle_length);
  std::string blue_part = (blue == BlueTarget::path ? "P" : "K") +
                          std::to_string(target_order);
  return "(" + red_part + "," + blue_part + ")";
}

namespace {

using Mask = std::uint64_t;

constexpr Mask bit(std::size_t v) { return Mask{1} << v; }

// Small graphs as one adjacency word per vertex.
struct MaskGraph {
  std::size_t n = 0;
  std::array<Mask, 64> adj{};
};

// Shortest cycle through some edge has length <= cap.
bool mask_cycle_at_most(const MaskGraph& g, std::size_t cap) {
  for (std::size_t u = 0; u < g.n; ++u) {
    for (Mask rest = g.adj[u] & ~(bit(u + 1) - 1); rest != 0; rest &= rest - 1) {
      const auto v = static_cast<std::size_t>(std::countr_zero(rest));
      // BFS from u without the edge uv; reaching v at depth k closes a
      // (k+1)-cycle.
      Mask visited = bit(u);
      Mask frontier = bit(u);
      for (std::size_t depth = 1; depth + 1 <= cap; ++depth) {
        Mask next = 0;
        for (Mask f = frontier; f != 0; f &= f - 1) {
          auto x = static_cast<std::size_t>(std::countr_zero(f));
          Mask step = g.adj[x];
          if (x == u) step &= ~bit(v);
          next |= step;
        }
        next &= ~visited;
        if (next & bit(v)) return true;
        if (next == 0) break;
        visited |= next;
        frontier = next;
      }
    }
  }
  return false;
}

bool extend_cycle(const MaskGraph& g, std::size_t start, std::size_t head,
                  Mask used, std::size_t remaining) {
  if (remaining == 0) return (g.adj[head] & bit(start)) != 0;
  // Vertices above `start` only, so each cycle is found from its minimum.
  Mask options = g.adj[head] & ~used & ~(bit(start + 1) - 1);
  for (; options != 0; options &= options - 1) {
    auto x = static_cast<std::size_t>(std::countr_zero(options));
    if (extend_cycle(g, start, x, used | bit(x), remaining - 1)) return true;
  }
  return false;
}

bool mask_cycle_exact(const MaskGraph& g, std::size_t length) {
  for (std::size_t s = 0; s + length <= g.n; ++s)
    if (extend_cycle(g, s, s, bit(s), length - 1)) return true;
  return false;
}

bool extend_path(const MaskGraph& g, std::size_t head, Mask used,
                 std::size_t remaining) {
  if (remaining == 0) return true;
  for (Mask options = g.adj[head] & ~used; options != 0; options &= options - 1) {
    auto x = static_cast<std::size_t>(std::countr_zero(options));
    if (extend_path(g, x, used | bit(x), remaining - 1)) return true;
  }
  return false;
}

bool mask_path(const MaskGraph& g, std::size_t vertices) {
  if (vertices == 0) return true;
  if (vertices > g.n) return false;
  for (std::size_t v = 0; v < g.n; ++v)
    if (extend_path(g, v, bit(v), vertices - 1)) return true;
  return false;
}

bool extend_clique(const MaskGraph& g, Mask candidates, std::size_t remaining) {
  if (remaining == 0) return true;
  if (static_cast<std::size_t>(std::popcount(candidates)) < remaining) return false;
  for (; candidates != 0; candidates &= candidates - 1) {
    auto x = static_cast<std::size_t>(std::countr_zero(candidates));
    // Later picks come from above x to avoid revisiting subsets.
    Mask above = candidates & ~(bit(x + 1) - 1);
    if (extend_clique(g, above & g.adj[x], remaining - 1)) return true;
  }
  return false;
}

bool mask_clique(const MaskGraph& g, std::size_t order) {
  Mask all = g.n == 64 ? ~Mask{0} : bit(g.n) - 1;
  return extend_clique(g, all, order);
}

bool red_member(const MaskGraph& red, const ArrowQuery& q) {
  return q.red == RedFamily::cycles_at_most ? mask_cycle_at_most(red, q.cycle_length)
                                            : mask_cycle_exact(red, q.cycle_length);
}

bool blue_target(const MaskGraph& blue, const ArrowQuery& q) {
  return q.blue == BlueTarget::path ? mask_path(blue, q.target_order)
                                    : mask_clique(blue, q.target_order);
}

void split_by_coloring(const Graph& g, std::uint64_t blue_bits, MaskGraph& red,
                       MaskGraph& blue) {
  red.n = blue.n = g.vertex_count();
  std::fill(red.adj.begin(), red.adj.begin() + static_cast<std::ptrdiff_t>(red.n), 0);
  std::fill(blue.adj.begin(), blue.adj.begin() + static_cast<std::ptrdiff_t>(blue.n), 0);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    MaskGraph& side = ((blue_bits >> e) & 1U) ? blue : red;
    side.adj[ed.u] |= bit(ed.v);
    side.adj[ed.v] |= bit(ed.u);
  }
}

void validate_query(const ArrowQuery& q) {
  require(q.cycle_length >= 3, "cycle length must be at least 3");
  require(q.target_order >= 1, "blue target needs at least one vertex");
}

MaskGraph single_color(const Graph& g, const EdgeColoring& col, Color c) {
  require(g.vertex_count() <= 63, "exact arrowing supports at most 63 vertices");
  MaskGraph out;
  out.n = g.vertex_count();
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (col.color(e) != c) continue;
    out.adj[g.edge(e).u] |= bit(g.edge(e).v);
    out.adj[g.edge(e).v] |= bit(g.edge(e).u);
  }
  return out;
}

}  // namespace

bool has_red_member(const Graph& g, const EdgeColoring& col, const ArrowQuery& q) {
  validate_query(q);
  return red_member(single_color(g, col, Color::red), q);
}

bool has_blue_target(const Graph& g, const EdgeColoring& col, const ArrowQuery& q) {
  validate_query(q);
  return blue_target(single_color(g, col, Color::blue), q);
}

ArrowVerdict arrows_exact(const Graph& g, const ArrowQuery& q,
                          std::size_t edge_budget, unsigned threads) {
  validate_query(q);
  require(g.vertex_count() <= 63, "exact arrowing supports at most 63 vertices");
  const std::size_t m = g.edge_count();
  if (m > edge_budget || m > 40)
    throw BudgetExceeded("exact arrowing over 2^" + std::to_string(m) +
                         " colorings exceeds the edge budget of " +
                         std::to_string(std::min<std::size_t>(edge_budget, 40)));

  const std::uint64_t total = std::uint64_t{1} << m;
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, total));

  std::atomic<std::uint64_t> first_bad{total};
  auto scan = [&](std::uint64_t begin, std::uint64_t end) {
    MaskGraph red;
    MaskGraph blue;
    for (std::uint64_t x = begin; x < end; ++x) {
      if (x >= first_bad.load(std::memory_order_relaxed)) return;
      split_by_coloring(g, x, red, blue);
      if (red_member(red, q) || blue_target(blue, q)) continue;
      std::uint64_t seen = first_bad.load();
      while (x < seen && !first_bad.compare_exchange_weak(seen, x)) {
      }
      return;
    }
  };

  if (threads <= 1) {
    scan(0, total);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t block = (total + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      std::uint64_t begin = w * block;
      std::uint64_t end = std::min(total, begin + block);
      if (begin < end) pool.emplace_back(scan, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  ArrowVerdict verdict;
  const std::uint64_t bad = first_bad.load();
  if (bad == total) {
    verdict.colorings_checked = total;
    return verdict;
  }
  std::vector<bool> bits(m);
  for (std::size_t e = 0; e < m; ++e) bits[e] = ((bad >> e) & 1U) != 0;
  verdict.arrows = false;
  verdict.counterexample.emplace(g, std::move(bits));
  verdict.colorings_checked = bad + 1;
  return verdict;
}

std::size_t ramsey_cycles_vs_clique(std::size_t n, std::size_t cap) {
  require(n >= 2, "clique order must be at least 2");
  require(cap > n, "cycle cap must exceed the clique order");
  return cap >= 2 * n - 1 ? 2 * n - 1 : 2 * n;
}

// ------------------------------------------------------------ min-size search

std::uint64_t canonical_code(const Graph& g) {
  const std::size_t n = g.vertex_count();
  require(n * (n - 1) / 2 <= 64 || n <= 1, "canonical code supports at most 11 vertices");
  // Invariant key per vertex: degree, then sorted neighbour degrees.
  std::vector<std::vector<std::size_t>> key(n);
  for (Vertex v = 0; v < n; ++v) {
    key[v].push_back(g.degree(v));
    std::vector<std::size_t> around;
    for (Vertex w : g.neighbors(v).members()) around.push_back(g.degree(w));
    std::sort(around.begin(), around.end());
    key[v].insert(key[v].end(), around.begin(), around.end());
  }
  std::vector<Vertex> order(n);
  for (Vertex v = 0; v < n; ++v) order[v] = v;
  std::sort(order.begin(), order.end(),
            [&](Vertex a, Vertex b) { return key[a] != key[b] ? key[a] > key[b] : a < b; });
  std::vector<std::pair<std::size_t, std::size_t>> classes;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && key[order[j]] == key[order[i]]) ++j;
    classes.emplace_back(i, j);
    i = j;
  }

  auto code_of = [&](const std::vector<Vertex>& ord) {
    std::uint64_t code = 0;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j, ++pos)
        if (g.adjacent(ord[i], ord[j])) code |= std::uint64_t{1} << pos;
    return code;
  };

  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  // Odometer over permutations within each class.
  std::function<void(std::size_t)> permute = [&](std::size_t c) {
    if (c == classes.size()) {
      best = std::min(best, code_of(order));
      return;
    }
    auto first = order.begin() + static_cast<std::ptrdiff_t>(classes[c].first);
    auto last = order.begin() + static_cast<std::ptrdiff_t>(classes[c].second);
    std::sort(first, last);
    do {
      permute(c + 1);
    } while (std::next_permutation(first, last));
  };
  permute(0);
  return best;
}

MinSizeResult min_size_ramsey_exact(const ArrowQuery& q, std::size_t max_vertices,
                                    std::size_t edge_budget) {
  validate_query(q);
  require(max_vertices >= 1 && max_vertices <= 8,
          "min-size search supports vertex caps 1..8");
  const Graph host = Graph::complete(max_vertices);
  const std::size_t slots = host.edge_count();
  MinSizeResult result;
  result.vertex_cap = max_vertices;

  for (std::size_t m = 1; m <= slots; ++m) {
    if (m > edge_budget)
      throw BudgetExceeded("min-size search reached " + std::to_string(m) +
                           " edges, beyond the edge budget of " +
                           std::to_string(edge_budget));
    std::unordered_set<std::uint64_t> seen;
    std::vector<std::size_t> idx(m);
    for (std::size_t i = 0; i < m; ++i) idx[i] = i;
    while (true) {
      std::vector<Edge> list;
      list.reserve(m);
      for (auto i : idx) list.push_back(host.edge(i));
      Graph candidate(max_vertices, list);
      if (!is_forest(candidate) && seen.insert(canonical_code(candidate)).second) {
        ++result.candidates_checked;
        if (arrows_exact(candidate, q, edge_budget, 1).arrows) {
          result.found = true;
          result.edges = m;
          result.witness = std::move(candidate);
          return result;
        }
      }
      // Next m-subset of the host's edge slots.
      std::size_t i = m;
      while (i > 0 && idx[i - 1] == slots - m + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < m; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return result;
}

// -------------------------------------------------------------- cycle closing

ChordCandidates chord_candidates(std::size_t n, std::size_t i) {
  require(n % 4 == 0 && n >= 4, "cycle closing needs n divisible by 4");
  const std::size_t half = 3 * n / 2;
  const std::size_t mid = 3 * n / 4;
  ChordCandidates out;
  // Left: l + L = 2m + 1 - i, 1 <= l, L <= m - 1.
  if (i <= 2 * mid + 1) {
    const std::size_t sum = 2 * mid + 1 - i;
    for (std::size_t l = 1; l + 1 <= mid; ++l)
      if (sum > l && sum - l >= 1 && sum - l <= mid - 1) out.left.push_back({l, sum - l});
  }
  // Right: r + R = n - i + 2m - 1, m + 1 <= r, R <= 3n/2.
  if (i <= n) {
    const std::size_t sum = n - i + 2 * mid - 1;
    for (std::size_t r = mid + 1; r <= half; ++r)
      if (sum > r && sum - r >= mid + 1 && sum - r <= half) out.right.push_back({r, sum - r});
  }
  return out;
}

std::optional<CycleWitness> close_cycle(const std::vector<Vertex>& path1,
                                        const std::vector<Vertex>& path2,
                                        const Graph& chords, std::size_t n) {
  require(n % 4 == 0 && n >= 4, "cycle closing needs n divisible by 4");
  const std::size_t half = 3 * n / 2;
  const std::size_t mid = 3 * n / 4;
  require(path1.size() == half && path2.size() == half,
          "each half path must have 3n/2 vertices");
  VertexSet used(chords.vertex_count());
  for (const auto* p : {&path1, &path2}) {
    for (Vertex v : *p) {
      require(v < chords.vertex_count(), "path vertex outside the chord graph");
      require(!used.contains(v), "path vertices must be distinct");
      used.insert(v);
    }
  }
  auto v = [&](std::size_t pos) { return path1[pos - 1]; };
  auto u = [&](std::size_t pos) { return path2[pos - 1]; };

  for (std::size_t i = n / 4; i <= 3 * n / 4; ++i) {
    if (i % 2 != 0) continue;
    const ChordCandidates cand = chord_candidates(n, i);
    auto left = std::find_if(cand.left.begin(), cand.left.end(), [&](const ChordPair& c) {
      return chords.adjacent(v(c.first_pos), u(c.second_pos));
    });
    if (left == cand.left.end()) continue;
    auto right = std::find_if(cand.right.begin(), cand.right.end(), [&](const ChordPair& c) {
      return chords.adjacent(v(c.first_pos), u(c.second_pos));
    });
    if (right == cand.right.end()) continue;

    CycleWitness w;
    const std::size_t l = left->first_pos;
    const std::size_t big_l = left->second_pos;
    const std::size_t r = right->first_pos;
    const std::size_t big_r = right->second_pos;
    for (std::size_t k = mid; k >= l; --k) w.cycle.push_back(v(k));
    for (std::size_t k = big_l; k <= big_r; ++k) w.cycle.push_back(u(k));
    for (std::size_t k = r; k > mid; --k) w.cycle.push_back(v(k));
    w.chords = {Edge{std::min(v(l), u(big_l)), std::max(v(l), u(big_l))},
                Edge{std::min(u(big_r), v(r)), std::max(u(big_r), v(r))}};
    w.left_length = i;
    w.right_length = n - i;
    w.left = *left;
    w.right = *right;
    return w;
  }
  return std::nullopt;
}

std::pair<std::vector<Vertex>, std::vector<Vertex>> split_path_for_closing(
    const std::vector<Vertex>& path, std::size_t n,
    const std::vector<std::uint8_t>& side) {
  require(n % 4 == 0 && n >= 4, "cycle closing needs n divisible by 4");
  const std::size_t half = 3 * n / 2;
  const std::size_t mid = 3 * n / 4;
  require(path.size() >= 2 * half, "path needs at least 3n vertices");
  std::size_t offset = 0;
  if (!side.empty()) {
    auto same_side = [&](std::size_t off) {
      return side.at(path[off + mid - 1]) == side.at(path[off + half + mid - 1]);
    };
    if (!same_side(0)) {
      require(path.size() >= 2 * half + 1 && same_side(1),
              "path middles lie on different sides and the path cannot be shifted");
      offset = 1;
    }
  }
  auto begin = path.begin() + static_cast<std::ptrdiff_t>(offset);
  return {std::vector<Vertex>(begin, begin + static_cast<std::ptrdiff_t>(half)),
          std::vector<Vertex>(begin + static_cast<std::ptrdiff_t>(half),
                              begin + static_cast<std::ptrdiff_t>(2 * half))};
}

// -------------------------------------------------------------- Monte Carlo

ExpansionTrial expansion_trial(const ExpansionMcConfig& cfg, std::size_t index,
                               RandomSource rng) {
  const std::size_t n = cfg.vertices;
  require(cfg.s_size + cfg.t_size <= n, "S and T do not fit in the graph");
  std::vector<Edge> edges;
  if (cfg.model == RandomModel::binomial) {
    edges = gnp(n, cfg.p, rng).edges();
  } else {
    edges = project(random_pairing(n, cfg.degree, rng)).edges();
  }

  ExpansionTrial trial;
  trial.trial = index;
  trial.min_crossing = std::numeric_limits<std::size_t>::max();
  std::vector<Vertex> perm(n);
  std::vector<std::uint8_t> label(n);
  for (std::size_t pair = 0; pair < cfg.pairs_per_graph; ++pair) {
    for (Vertex v = 0; v < n; ++v) perm[v] = v;
    const std::size_t picked = cfg.s_size + cfg.t_size;
    for (std::size_t k = 0; k < picked; ++k)
      std::swap(perm[k], perm[k + rng.uniform_below(n - k)]);
    std::fill(label.begin(), label.end(), std::uint8_t{0});
    for (std::size_t k = 0; k < cfg.s_size; ++k) label[perm[k]] = 1;
    for (std::size_t k = cfg.s_size; k < picked; ++k) label[perm[k]] = 2;
    std::size_t crossing = 0;
    for (const Edge& e : edges)
      if ((label[e.u] | label[e.v]) == 3) ++crossing;
    if (static_cast<double>(crossing) <= cfg.threshold) ++trial.failures;
    trial.min_crossing = std::min(trial.min_crossing, crossing);
    trial.crossing_sum += static_cast<double>(crossing);
    trial.crossing_sq_sum += static_cast<double>(crossing) * static_cast<double>(crossing);
  }
  return trial;
}

ExpansionEstimate summarize(const ExpansionMcConfig& cfg,
                            const std::vector<ExpansionTrial>& trials) {
  ExpansionEstimate est;
  double sum = 0.0;
  double sq = 0.0;
  for (const auto& t : trials) {
    est.failures += t.failures;
    sum += t.crossing_sum;
    sq += t.crossing_sq_sum;
  }
  est.samples = trials.size() * cfg.pairs_per_graph;
  if (est.samples == 0) return est;
  const auto count = static_cast<double>(est.samples);
  est.frequency = static_cast<double>(est.failures) / count;
  // Wilson score interval; stays informative when no failure is observed.
  const double z2 = cfg.z * cfg.z;
  const double centre = (est.frequency + z2 / (2.0 * count)) / (1.0 + z2 / count);
  const double half_width =
      cfg.z * std::sqrt(est.frequency * (1.0 - est.frequency) / count + z2 / (4.0 * count * count)) /
      (1.0 + z2 / count);
  est.ci_low = std::max(0.0, centre - half_width);
  est.ci_high = std::min(1.0, centre + half_width);
  est.mean_crossing = sum / count;
  if (est.samples > 1) {
    const double var = std::max(0.0, (sq - sum * sum / count) / (count - 1.0));
    est.mean_crossing_stderr = std::sqrt(var / count);
  }
  return est;
}

ExpansionEstimate monte_carlo_expansion(const ExpansionMcConfig& cfg,
                                        const RandomSource& rng, unsigned threads) {
  require(cfg.s_size + cfg.t_size <= cfg.vertices, "S and T do not fit in the graph");
  require(cfg.model != RandomModel::binomial || (cfg.p >= 0.0 && cfg.p <= 1.0),
          "edge probability must lie in [0, 1]");
  require(cfg.model != RandomModel::regular_pairing ||
              (cfg.degree >= 1 && (cfg.degree * cfg.vertices) % 2 == 0),
          "pairing model needs d >= 1 and d*n even");
  std::vector<ExpansionTrial> trials(cfg.trials);
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  auto work = [&](std::size_t worker) {
    for (std::size_t k = worker; k < cfg.trials; k += threads)
      trials[k] = expansion_trial(cfg, k, rng.substream(k));
  };
  if (threads <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  return summarize(cfg, trials);
}

}  // namespace sizeramsey
