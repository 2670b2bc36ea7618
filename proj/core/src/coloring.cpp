#include "sizeramsey/coloring.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sizeramsey/error.hpp"
#include "union_find.hpp"

namespace sizeramsey {

// ------------------------------------------------------------ EdgeColoring

EdgeColoring::EdgeColoring(const Graph& g, Color fill)
    : graph_(&g), blue_(g.edge_count(), fill == Color::blue) {}

EdgeColoring::EdgeColoring(const Graph& g, std::vector<bool> blue_bits)
    : graph_(&g), blue_(std::move(blue_bits)) {
  require(blue_.size() == g.edge_count(),
          "coloring length " + std::to_string(blue_.size()) +
              " does not match edge count " + std::to_string(g.edge_count()));
}

std::size_t EdgeColoring::count(Color c) const {
  auto blue = static_cast<std::size_t>(std::count(blue_.begin(), blue_.end(), true));
  return c == Color::blue ? blue : blue_.size() - blue;
}

Graph EdgeColoring::subgraph(Color c) const {
  std::vector<EdgeIndex> keep;
  for (EdgeIndex e = 0; e < blue_.size(); ++e)
    if (color(e) == c) keep.push_back(e);
  return graph_->edge_subgraph(keep);
}

std::string EdgeColoring::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  const std::size_t bytes = (blue_.size() + 7) / 8;
  out.reserve(bytes * 2);
  for (std::size_t k = 0; k < bytes; ++k) {
    unsigned byte = 0;
    for (std::size_t j = 0; j < 8 && 8 * k + j < blue_.size(); ++j)
      if (blue_[8 * k + j]) byte |= 1U << j;
    out.push_back(kDigits[byte >> 4]);
    out.push_back(kDigits[byte & 15]);
  }
  return out;
}

EdgeColoring EdgeColoring::from_hex(const Graph& g, std::string_view hex) {
  const std::size_t m = g.edge_count();
  require(hex.size() == 2 * ((m + 7) / 8),
          "hex coloring has wrong length for " + std::to_string(m) + " edges");
  auto nibble = [](char ch) -> unsigned {
    if (ch >= '0' && ch <= '9') return static_cast<unsigned>(ch - '0');
    if (ch >= 'a' && ch <= 'f') return static_cast<unsigned>(ch - 'a' + 10);
    if (ch >= 'A' && ch <= 'F') return static_cast<unsigned>(ch - 'A' + 10);
    throw PreconditionError(std::string("invalid hex digit '") + ch + "'");
  };
  std::vector<bool> bits(m, false);
  for (std::size_t k = 0; 2 * k < hex.size(); ++k) {
    unsigned byte = nibble(hex[2 * k]) << 4 | nibble(hex[2 * k + 1]);
    for (std::size_t j = 0; j < 8; ++j) {
      bool set = ((byte >> j) & 1U) != 0;
      if (8 * k + j < m)
        bits[8 * k + j] = set;
      else
        require(!set, "hex coloring sets bits past the last edge");
    }
  }
  return EdgeColoring(g, std::move(bits));
}

EdgeColoring random_coloring(const Graph& g, double blue_probability,
                             RandomSource& rng) {
  std::vector<bool> bits(g.edge_count());
  for (std::size_t e = 0; e < bits.size(); ++e) bits[e] = rng.bernoulli(blue_probability);
  return EdgeColoring(g, std::move(bits));
}

// ------------------------------------------------------------------ grower

namespace {

std::vector<VertexSet> blue_rows(const Graph& g, const EdgeColoring& col) {
  std::vector<VertexSet> rows(g.vertex_count(), VertexSet(g.vertex_count()));
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (!col.is_blue(e)) continue;
    rows[g.edge(e).u].insert(g.edge(e).v);
    rows[g.edge(e).v].insert(g.edge(e).u);
  }
  return rows;
}

void trim_to(VertexSet& s, std::size_t size) {
  for (std::size_t have = s.size(); have > size; --have) s.erase(*s.last());
}

}  // namespace

GrowerOutcome grow_blue_path(
    const Graph& g, const EdgeColoring& col, const GrowerRequest& request,
    const std::function<void(const GrowerState&)>& observer) {
  const std::size_t n = g.vertex_count();
  require(&col.graph() == &g || col.graph() == g, "coloring belongs to another graph");
  require(request.path_vertices >= 1, "target path needs at least one vertex");
  require(request.s_min + request.t_min <= n,
          "separator sizes " + std::to_string(request.s_min) + " + " +
              std::to_string(request.t_min) + " exceed " + std::to_string(n) +
              " vertices");

  const auto blue = blue_rows(g, col);
  VertexSet s = VertexSet::full(n);
  VertexSet t(n);
  std::vector<Vertex> path;
  std::size_t s_size = n;
  std::size_t t_size = 0;
  std::size_t steps = 0;

  while (true) {
    if (path.size() >= request.path_vertices) return {std::move(path), steps};
    if (s_size >= request.s_min && t_size >= request.t_min) {
      trim_to(s, request.s_min);
      trim_to(t, request.t_min);
      return {SeparatorCertificate{std::move(s), std::move(t), std::move(path)}, steps};
    }
    if (path.empty()) {
      auto start = s.first();
      if (!start)
        throw GrowerStalled("grower exhausted all vertices: no blue path on " +
                            std::to_string(request.path_vertices) +
                            " vertices and separator sizes unreachable");
      s.erase(*start);
      --s_size;
      path.push_back(*start);
    } else {
      const Vertex head = path.back();
      auto next = (blue[head] & s).first();
      if (next) {
        s.erase(*next);
        --s_size;
        path.push_back(*next);
      } else {
        path.pop_back();
        t.insert(head);
        ++t_size;
      }
    }
    ++steps;
    if (observer) observer({steps, s_size, t_size, path.size()});
  }
}

bool certificate_holds(const EdgeColoring& col, const SeparatorCertificate& cert) {
  const Graph& g = col.graph();
  if (!cert.s.disjoint(cert.t)) return false;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (!col.is_blue(e)) continue;
    const Edge& ed = g.edge(e);
    if ((cert.s.contains(ed.u) && cert.t.contains(ed.v)) ||
        (cert.s.contains(ed.v) && cert.t.contains(ed.u)))
      return false;
  }
  VertexSet seen(g.vertex_count());
  for (std::size_t i = 0; i < cert.blue_path.size(); ++i) {
    Vertex v = cert.blue_path[i];
    if (v >= g.vertex_count() || seen.contains(v)) return false;
    seen.insert(v);
    if (i == 0) continue;
    auto e = g.edge_index(cert.blue_path[i - 1], v);
    if (!e || !col.is_blue(*e)) return false;
  }
  return true;
}

// ---------------------------------------------------------------- expansion

namespace {

double log_choose(double n, double k) {
  return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
}

// Advance a sorted k-combination drawn from pool (ascending); false at end.
bool next_combination(std::vector<std::size_t>& idx, std::size_t pool) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < pool - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

ExpansionVerdict arrows_by_expansion(const Graph& g, std::size_t n, double c,
                                     std::uint64_t budget) {
  const std::size_t big_n = g.vertex_count();
  require(c > 0.0 && n >= 1, "expansion check needs c > 0 and n >= 1");
  require(std::abs(static_cast<double>(big_n) - (c + 1.0) * static_cast<double>(n)) <= 1.0,
          "graph order must be (c+1)n within rounding");
  const auto k = static_cast<std::size_t>(std::llround(c * static_cast<double>(n) / 2.0));
  require(k >= 1, "set size cn/2 must be at least 1");
  require(2 * k <= big_n, "two disjoint sets of size cn/2 do not fit");

  const double ordered_pairs =
      std::exp(log_choose(static_cast<double>(big_n), static_cast<double>(k)) +
               log_choose(static_cast<double>(big_n - k), static_cast<double>(k)));
  if (ordered_pairs > static_cast<double>(budget) * (1.0 + 1e-9))
    throw BudgetExceeded("exact expansion check needs ~" +
                         std::to_string(ordered_pairs) + " (S,T) pairs, budget is " +
                         std::to_string(budget) + "; use monte_carlo_expansion");

  ExpansionVerdict verdict;
  verdict.set_size = k;
  verdict.threshold = c * static_cast<double>(n);

  std::vector<std::size_t> s_idx(k);
  for (std::size_t i = 0; i < k; ++i) s_idx[i] = i;
  std::vector<std::size_t> into_s(big_n);
  std::vector<Vertex> rest;
  rest.reserve(big_n);
  do {
    VertexSet s(big_n);
    for (auto i : s_idx) s.insert(static_cast<Vertex>(i));
    rest.clear();
    for (Vertex v = 0; v < big_n; ++v) {
      // T's minimum exceeds S's minimum, so each unordered pair is seen once.
      if (!s.contains(v) && v > s_idx.front()) rest.push_back(v);
      into_s[v] = g.neighbors(v).intersection_size(s);
    }
    if (rest.size() < k) continue;
    std::vector<std::size_t> t_idx(k);
    for (std::size_t i = 0; i < k; ++i) t_idx[i] = i;
    do {
      std::size_t crossing = 0;
      for (auto i : t_idx) crossing += into_s[rest[i]];
      ++verdict.pairs_checked;
      if (static_cast<double>(crossing) + 1e-9 < verdict.threshold) {
        VertexSet t(big_n);
        for (auto i : t_idx) t.insert(rest[i]);
        verdict.holds = false;
        verdict.witness = std::make_pair(std::move(s), std::move(t));
        verdict.witness_edges = crossing;
        return verdict;
      }
    } while (next_combination(t_idx, rest.size()));
  } while (next_combination(s_idx, big_n));
  return verdict;
}

// --------------------------------------------------------------- strategies

EdgeColoring spanning_tree_strategy(const Graph& g) {
  EdgeColoring col(g, Color::blue);
  for (EdgeIndex e : spanning_forest(g)) col.set(e, Color::red);
  return col;
}

EdgeColoring star_strategy(const Graph& g, const VertexSet& a) {
  require(a.universe() == g.vertex_count(), "vertex set does not match the graph");
  require(is_independent(square_graph(g), a),
          "star strategy needs a set independent in the square graph");
  EdgeColoring col(g, Color::blue);
  for (EdgeIndex e = 0; e < g.edge_count(); ++e)
    if (a.contains(g.edge(e).u) != a.contains(g.edge(e).v)) col.set(e, Color::red);
  return col;
}

TwoCaseResult two_case_strategy(const Graph& g, double a_const, double b_const,
                                std::size_t d_const) {
  const std::size_t n = g.vertex_count();
  VertexSet high = high_degree_set(g, d_const);
  VertexSet rest = high.complement();
  // Square of G[V \ B]: its degrees stay below d^2 + 1, which keeps A large.
  std::vector<EdgeIndex> inner;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e)
    if (rest.contains(g.edge(e).u) && rest.contains(g.edge(e).v)) inner.push_back(e);
  VertexSet a = greedy_max_independent(square_graph(g.edge_subgraph(inner)), rest);
  VertexSet outside = rest - a;  // V \ (A u B)

  const double b_size = static_cast<double>(high.size());
  const int label = b_size <= b_const * static_cast<double>(a.size()) ? 1 : 2;

  EdgeColoring col(g, Color::blue);
  detail::UnionFind forest(n);
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    bool star = (a.contains(ed.u) && outside.contains(ed.v)) ||
                (a.contains(ed.v) && outside.contains(ed.u));
    if (star) {
      col.set(e, Color::red);
      forest.unite(ed.u, ed.v);
    }
  }
  if (label == 2) {
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
      const Edge& ed = g.edge(e);
      if (col.color(e) == Color::red || !rest.contains(ed.u) || !rest.contains(ed.v))
        continue;
      if (forest.unite(ed.u, ed.v)) col.set(e, Color::red);
    }
  }

  TwoCaseResult out{std::move(col), label, std::move(a), std::move(high), false};
  out.dense_shortcut =
      b_size > 2.0 * a_const / static_cast<double>(d_const + 1) * static_cast<double>(n);
  return out;
}

}  // namespace sizeramsey
