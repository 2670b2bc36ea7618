#include "sizeramsey/graph.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <string>

#include "sizeramsey/error.hpp"
#include "union_find.hpp"

namespace sizeramsey {

// ---------------------------------------------------------------- VertexSet

VertexSet::VertexSet(std::size_t universe)
    : universe_(universe), words_((universe + 63) / 64, 0) {}

VertexSet::VertexSet(std::size_t universe, std::span<const Vertex> members)
    : VertexSet(universe) {
  for (Vertex v : members) insert(v);
}

VertexSet VertexSet::full(std::size_t universe) {
  VertexSet s(universe);
  std::fill(s.words_.begin(), s.words_.end(), ~std::uint64_t{0});
  s.clear_tail();
  return s;
}

std::size_t VertexSet::size() const {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

void VertexSet::insert(Vertex v) {
  require(v < universe_, "vertex " + std::to_string(v) + " outside set universe");
  words_[v >> 6] |= std::uint64_t{1} << (v & 63);
}

void VertexSet::erase(Vertex v) {
  if (v >= universe_) return;
  words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
}

std::optional<Vertex> VertexSet::next(Vertex from) const {
  if (from >= universe_) return std::nullopt;
  std::size_t wi = from >> 6;
  std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (from & 63));
  while (true) {
    if (w != 0) return static_cast<Vertex>(wi * 64 + std::countr_zero(w));
    if (++wi == words_.size()) return std::nullopt;
    w = words_[wi];
  }
}

std::optional<Vertex> VertexSet::last() const {
  for (std::size_t wi = words_.size(); wi-- > 0;) {
    if (words_[wi] != 0)
      return static_cast<Vertex>(wi * 64 + 63 - std::countl_zero(words_[wi]));
  }
  return std::nullopt;
}

std::vector<Vertex> VertexSet::members() const {
  std::vector<Vertex> out;
  out.reserve(size());
  for (std::size_t wi = 0; wi < words_.size(); ++wi) {
    for (std::uint64_t w = words_[wi]; w != 0; w &= w - 1)
      out.push_back(static_cast<Vertex>(wi * 64 + std::countr_zero(w)));
  }
  return out;
}

bool VertexSet::disjoint(const VertexSet& other) const {
  return intersection_size(other) == 0;
}

std::size_t VertexSet::intersection_size(const VertexSet& other) const {
  check_same_universe(other);
  std::size_t total = 0;
  for (std::size_t i = 0; i < words_.size(); ++i)
    total += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
  return total;
}

VertexSet& VertexSet::operator|=(const VertexSet& other) {
  check_same_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

VertexSet& VertexSet::operator&=(const VertexSet& other) {
  check_same_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

VertexSet& VertexSet::operator-=(const VertexSet& other) {
  check_same_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

VertexSet VertexSet::complement() const {
  VertexSet out = *this;
  for (auto& w : out.words_) w = ~w;
  out.clear_tail();
  return out;
}

void VertexSet::check_same_universe(const VertexSet& other) const {
  require(universe_ == other.universe_, "vertex sets over different universes");
}

void VertexSet::clear_tail() {
  if (universe_ % 64 != 0 && !words_.empty())
    words_.back() &= (std::uint64_t{1} << (universe_ % 64)) - 1;
}

// -------------------------------------------------------------------- Graph

Graph::Graph(std::size_t n) : n_(n), adjacency_(n, VertexSet(n)) {}

Graph::Graph(std::size_t n, std::span<const Edge> edges) : Graph(n) {
  edges_.reserve(edges.size());
  for (Edge e : edges) {
    require(e.u < n && e.v < n, "edge endpoint out of range");
    require(e.u != e.v, "self-loop at vertex " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
    require(!adjacency_[e.u].contains(e.v),
            "duplicate edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
    adjacency_[e.u].insert(e.v);
    adjacency_[e.v].insert(e.u);
    edges_.push_back(e);
  }
  std::sort(edges_.begin(), edges_.end());
}

Graph::Graph(std::size_t n,
             std::initializer_list<std::pair<Vertex, Vertex>> edges) {
  std::vector<Edge> list;
  list.reserve(edges.size());
  for (auto [u, v] : edges) list.push_back({u, v});
  *this = Graph(n, list);
}

Graph Graph::complete(std::size_t n) {
  std::vector<Edge> list;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) list.push_back({u, v});
  return Graph(n, list);
}

Graph Graph::cycle(std::size_t n) {
  require(n >= 3, "a cycle needs at least 3 vertices");
  std::vector<Edge> list;
  for (Vertex u = 0; u < n; ++u)
    list.push_back({u, static_cast<Vertex>((u + 1) % n)});
  return Graph(n, list);
}

Graph Graph::path(std::size_t n) {
  std::vector<Edge> list;
  for (Vertex u = 0; u + 1 < n; ++u) list.push_back({u, u + 1});
  return Graph(n, list);
}

Graph Graph::petersen() {
  // Outer 5-cycle 0..4, spokes i -> i+5, inner pentagram.
  std::vector<Edge> list;
  for (Vertex i = 0; i < 5; ++i) {
    list.push_back({i, (i + 1) % 5});
    list.push_back({i, i + 5});
    list.push_back({i + 5, (i + 2) % 5 + 5});
  }
  return Graph(10, list);
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (Vertex v = 0; v < n_; ++v) best = std::max(best, degree(v));
  return best;
}

std::optional<EdgeIndex> Graph::edge_index(Vertex u, Vertex v) const {
  if (u > v) std::swap(u, v);
  Edge key{u, v};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return std::nullopt;
  return static_cast<EdgeIndex>(it - edges_.begin());
}

Graph Graph::edge_subgraph(std::span<const EdgeIndex> keep) const {
  std::vector<Edge> list;
  list.reserve(keep.size());
  for (EdgeIndex i : keep) {
    require(i < edges_.size(), "edge index out of range");
    list.push_back(edges_[i]);
  }
  return Graph(n_, list);
}

// --------------------------------------------------------------- MultiGraph

void MultiGraph::add_edge(Vertex u, Vertex v) {
  require(u < n_ && v < n_, "multigraph endpoint out of range");
  if (u > v) std::swap(u, v);
  edges_.push_back({u, v});
  degree_[u] += 1;
  degree_[v] += 1;
  if (u == v) ++loops_;
}

std::size_t MultiGraph::repeated_edge_count() const {
  std::vector<Edge> sorted;
  sorted.reserve(edges_.size());
  for (const Edge& e : edges_)
    if (e.u != e.v) sorted.push_back(e);
  std::sort(sorted.begin(), sorted.end());
  std::size_t repeats = 0;
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] == sorted[i - 1]) ++repeats;
  return repeats;
}

Graph MultiGraph::to_graph() const {
  require(is_simple(), "multigraph has loops or repeated edges");
  return Graph(n_, edges_);
}

// --------------------------------------------------------------- operations

std::size_t edges_between(const Graph& g, const VertexSet& s,
                          const VertexSet& t) {
  require(s.universe() == g.vertex_count() && t.universe() == g.vertex_count(),
          "vertex sets do not match the graph");
  require(s.disjoint(t), "edges_between requires disjoint sets");
  std::size_t total = 0;
  for (std::size_t wi = 0; wi < s.words().size(); ++wi) {
    for (std::uint64_t w = s.words()[wi]; w != 0; w &= w - 1) {
      auto v = static_cast<Vertex>(wi * 64 + std::countr_zero(w));
      total += g.neighbors(v).intersection_size(t);
    }
  }
  return total;
}

std::optional<std::vector<Vertex>> has_cycle_at_most(const Graph& g,
                                                     std::size_t max_length) {
  require(max_length >= 3, "cycle length cap must be at least 3");
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> dist(n);
  std::vector<Vertex> parent(n);
  for (const Edge& e : g.edges()) {
    // Shortest u-v path avoiding the edge itself, depth <= max_length - 1.
    std::fill(dist.begin(), dist.end(), SIZE_MAX);
    std::queue<Vertex> frontier;
    dist[e.u] = 0;
    frontier.push(e.u);
    bool reached = false;
    while (!frontier.empty() && !reached) {
      Vertex x = frontier.front();
      frontier.pop();
      if (dist[x] + 1 > max_length - 1) break;
      for (auto y = g.neighbors(x).first(); y; y = g.neighbors(x).next(*y + 1)) {
        if (x == e.u && *y == e.v) continue;
        if (dist[*y] != SIZE_MAX) continue;
        dist[*y] = dist[x] + 1;
        parent[*y] = x;
        if (*y == e.v) {
          reached = true;
          break;
        }
        frontier.push(*y);
      }
    }
    if (!reached) continue;
    std::vector<Vertex> cycle;
    for (Vertex x = e.v; x != e.u; x = parent[x]) cycle.push_back(x);
    cycle.push_back(e.u);
    std::reverse(cycle.begin(), cycle.end());
    return cycle;
  }
  return std::nullopt;
}

bool is_forest(const Graph& g, const VertexSet& restricted_to) {
  require(restricted_to.universe() == g.vertex_count(),
          "vertex set does not match the graph");
  detail::UnionFind uf(g.vertex_count());
  for (const Edge& e : g.edges()) {
    if (!restricted_to.contains(e.u) || !restricted_to.contains(e.v)) continue;
    if (!uf.unite(e.u, e.v)) return false;
  }
  return true;
}

std::vector<EdgeIndex> spanning_forest(const Graph& g) {
  detail::UnionFind uf(g.vertex_count());
  std::vector<EdgeIndex> out;
  for (EdgeIndex i = 0; i < g.edge_count(); ++i)
    if (uf.unite(g.edge(i).u, g.edge(i).v)) out.push_back(i);
  return out;
}

std::size_t component_count(const Graph& g) {
  return g.vertex_count() - spanning_forest(g).size();
}

Graph square_graph(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<Edge> list;
  for (Vertex u = 0; u < n; ++u) {
    VertexSet reach = g.neighbors(u);
    for (Vertex w : g.neighbors(u).members()) reach |= g.neighbors(w);
    for (auto v = reach.next(u + 1); v; v = reach.next(*v + 1))
      list.push_back({u, *v});
  }
  return Graph(n, list);
}

VertexSet greedy_max_independent(const Graph& g, const VertexSet& allowed) {
  require(allowed.universe() == g.vertex_count(),
          "vertex set does not match the graph");
  VertexSet chosen(g.vertex_count());
  VertexSet blocked(g.vertex_count());
  for (auto v = allowed.first(); v; v = allowed.next(*v + 1)) {
    if (blocked.contains(*v)) continue;
    chosen.insert(*v);
    blocked |= g.neighbors(*v);
  }
  return chosen;
}

bool is_independent(const Graph& g, const VertexSet& s) {
  for (auto v = s.first(); v; v = s.next(*v + 1))
    if (!g.neighbors(*v).disjoint(s)) return false;
  return true;
}

VertexSet high_degree_set(const Graph& g, std::size_t d) {
  VertexSet out(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) >= d + 1) out.insert(v);
  return out;
}

// ------------------------------------------------------------ edge-list I/O

namespace {

std::istringstream next_line(std::istream& in, std::size_t& line_no) {
  std::string line;
  if (!std::getline(in, line))
    throw PreconditionError("edge list truncated after line " +
                            std::to_string(line_no));
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return std::istringstream(line);
}

}  // namespace

Graph read_edge_list(std::istream& in) {
  std::size_t line_no = 0;
  auto header = next_line(in, line_no);
  std::size_t n = 0;
  std::size_t m = 0;
  std::string extra;
  if (!(header >> n >> m) || (header >> extra))
    throw PreconditionError("edge list header must be \"n m\"");
  std::vector<Edge> list;
  list.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    auto row = next_line(in, line_no);
    long long u = -1;
    long long v = -1;
    if (!(row >> u >> v) || (row >> extra))
      throw PreconditionError("malformed edge on line " + std::to_string(line_no));
    if (u < 0 || v < 0 || u >= v || static_cast<std::size_t>(v) >= n)
      throw PreconditionError("edge on line " + std::to_string(line_no) +
                              " violates 0 <= u < v < n");
    list.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  return Graph(n, list);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

}  // namespace sizeramsey
