#pragma once

// Simple undirected graphs with bit-set adjacency rows, plus the set,
// boundary and cycle primitives the rest of the library is built on.
//
// Vertices are dense indices 0..n-1. Edges are stored once as (u, v) with
// u < v, sorted lexicographically; an edge's position in that list is its
// stable identifier, which is what colorings index into.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace sizeramsey {

using Vertex = std::uint32_t;
using EdgeIndex = std::size_t;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Fixed-universe bit set over [0, universe).
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe);
  VertexSet(std::size_t universe, std::span<const Vertex> members);

  static VertexSet full(std::size_t universe);

  std::size_t universe() const { return universe_; }
  std::size_t size() const;
  bool empty() const { return size() == 0; }

  bool contains(Vertex v) const {
    return v < universe_ && ((words_[v >> 6] >> (v & 63)) & 1U) != 0;
  }
  void insert(Vertex v);
  void erase(Vertex v);

  // Smallest member >= from, if any.
  std::optional<Vertex> next(Vertex from = 0) const;
  std::optional<Vertex> first() const { return next(0); }
  std::optional<Vertex> last() const;

  std::vector<Vertex> members() const;

  bool disjoint(const VertexSet& other) const;
  // |this & other| without materialising the intersection.
  std::size_t intersection_size(const VertexSet& other) const;

  VertexSet& operator|=(const VertexSet& other);
  VertexSet& operator&=(const VertexSet& other);
  VertexSet& operator-=(const VertexSet& other);
  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }
  VertexSet complement() const;

  std::span<const std::uint64_t> words() const { return words_; }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  void check_same_universe(const VertexSet& other) const;
  void clear_tail();

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);
  // Throws PreconditionError on self-loops, duplicates or out-of-range ends.
  Graph(std::size_t n, std::span<const Edge> edges);
  Graph(std::size_t n, std::initializer_list<std::pair<Vertex, Vertex>> edges);

  static Graph complete(std::size_t n);
  static Graph cycle(std::size_t n);
  static Graph path(std::size_t n);
  static Graph petersen();

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeIndex i) const { return edges_[i]; }

  const VertexSet& neighbors(Vertex v) const { return adjacency_[v]; }
  bool adjacent(Vertex u, Vertex v) const { return adjacency_[u].contains(v); }
  std::size_t degree(Vertex v) const { return adjacency_[v].size(); }
  std::size_t max_degree() const;

  std::optional<EdgeIndex> edge_index(Vertex u, Vertex v) const;

  // Subgraph on the same vertex set keeping edges whose index is selected.
  Graph edge_subgraph(std::span<const EdgeIndex> keep) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<VertexSet> adjacency_;
};

// Multigraph with loops, as produced by projecting a pairing.
class MultiGraph {
 public:
  explicit MultiGraph(std::size_t n) : n_(n), degree_(n, 0) {}

  void add_edge(Vertex u, Vertex v);

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  // Loops contribute 2.
  std::size_t degree(Vertex v) const { return degree_[v]; }
  std::size_t loop_count() const { return loops_; }
  // Number of edges that repeat an earlier (non-loop) edge.
  std::size_t repeated_edge_count() const;
  bool is_simple() const { return loops_ == 0 && repeated_edge_count() == 0; }

  // Throws PreconditionError unless is_simple().
  Graph to_graph() const;

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> degree_;
  std::size_t loops_ = 0;
};

// e(S, T): edges with one end in S and the other in T. S and T must be
// disjoint.
std::size_t edges_between(const Graph& g, const VertexSet& s,
                          const VertexSet& t);

// Some cycle of length <= max_length, or nullopt. The cycle is the shortest
// one through the first edge (in index order) that lies on a short enough
// cycle. Returned as the vertex sequence without repeating the start.
std::optional<std::vector<Vertex>> has_cycle_at_most(const Graph& g,
                                                     std::size_t max_length);

bool is_forest(const Graph& g, const VertexSet& restricted_to);
inline bool is_forest(const Graph& g) {
  return is_forest(g, VertexSet::full(g.vertex_count()));
}

// Maximal acyclic edge subset, greedy in edge-index order.
std::vector<EdgeIndex> spanning_forest(const Graph& g);

std::size_t component_count(const Graph& g);

// G^2: u ~ v iff 1 <= dist(u, v) <= 2.
Graph square_graph(const Graph& g);

// Greedy maximal independent set inside `allowed`, ascending vertex order.
VertexSet greedy_max_independent(const Graph& g, const VertexSet& allowed);

bool is_independent(const Graph& g, const VertexSet& s);

// Vertices of degree >= d + 1.
VertexSet high_degree_set(const Graph& g, std::size_t d);

// Edge-list text format: "n m" then m lines "u v" with u < v.
Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);

}  // namespace sizeramsey
