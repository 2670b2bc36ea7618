#pragma once

// Red/blue edge colorings, the blue-path grower with its separator
// certificate, the exhaustive expansion check, and the three adversarial
// colorings that witness lower bounds (every one of them has an acyclic red
// subgraph).

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "sizeramsey/graph.hpp"
#include "sizeramsey/random.hpp"

namespace sizeramsey {

enum class Color : std::uint8_t { red = 0, blue = 1 };

// One color per edge, addressed by edge index. Holds a non-owning pointer to
// its graph; the graph must outlive the coloring.
class EdgeColoring {
 public:
  EdgeColoring(const Graph& g, Color fill = Color::red);
  EdgeColoring(const Graph& g, std::vector<bool> blue_bits);

  const Graph& graph() const { return *graph_; }
  std::size_t size() const { return blue_.size(); }

  Color color(EdgeIndex e) const { return blue_[e] ? Color::blue : Color::red; }
  bool is_blue(EdgeIndex e) const { return blue_[e]; }
  void set(EdgeIndex e, Color c) { blue_[e] = (c == Color::blue); }

  std::size_t count(Color c) const;
  Graph subgraph(Color c) const;

  // Packed little-endian: edge 8k+j is bit j of byte k; two lowercase hex
  // digits per byte. Empty colorings encode as "".
  std::string to_hex() const;
  static EdgeColoring from_hex(const Graph& g, std::string_view hex);

  friend bool operator==(const EdgeColoring& a, const EdgeColoring& b) {
    return a.blue_ == b.blue_;
  }

 private:
  const Graph* graph_;
  std::vector<bool> blue_;
};

EdgeColoring random_coloring(const Graph& g, double blue_probability,
                             RandomSource& rng);

struct SeparatorCertificate {
  VertexSet s;
  VertexSet t;
  // Blue path being grown when the process stopped (may be empty).
  std::vector<Vertex> blue_path;
};

struct GrowerRequest {
  std::size_t path_vertices = 1;  // stop when the blue path has this many vertices
  std::size_t s_min = 0;
  std::size_t t_min = 0;
};

// Snapshot after every grower step; (n - |S|) + |T| strictly increases.
struct GrowerState {
  std::size_t step = 0;
  std::size_t s_size = 0;
  std::size_t t_size = 0;
  std::size_t path_size = 0;
};

struct GrowerOutcome {
  std::variant<std::vector<Vertex>, SeparatorCertificate> result;
  std::size_t steps = 0;

  bool found_path() const { return result.index() == 0; }
  const std::vector<Vertex>& path() const { return std::get<0>(result); }
  const SeparatorCertificate& certificate() const { return std::get<1>(result); }
};

// Thrown when the grower exhausts every vertex without reaching either the
// path length or the separator sizes; only possible when
// s_min + t_min > n - (path_vertices - 1).
class GrowerStalled : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Grows a blue path by depth-first extension into the pool S, retiring dead
// heads into T. The first blue neighbour in ascending order is taken and
// restarts use the lowest vertex left in S. Stops with a path once it has
// request.path_vertices vertices, or with a certificate as soon as
// |S| >= s_min and |T| >= t_min (both then trimmed to exactly those sizes by
// dropping their highest-index members). No blue edge ever joins S and T.
GrowerOutcome grow_blue_path(
    const Graph& g, const EdgeColoring& col, const GrowerRequest& request,
    const std::function<void(const GrowerState&)>& observer = {});

// Full scan: no blue edge between s and t, path edges blue and simple.
bool certificate_holds(const EdgeColoring& col, const SeparatorCertificate& cert);

inline constexpr std::uint64_t kDefaultExpansionBudget = 100'000'000;

struct ExpansionVerdict {
  bool holds = true;
  std::size_t set_size = 0;        // |S| = |T| = round(c n / 2)
  double threshold = 0.0;          // c n
  std::uint64_t pairs_checked = 0; // unordered {S, T} pairs examined
  std::optional<std::pair<VertexSet, VertexSet>> witness;
  std::size_t witness_edges = 0;
};

// Exhaustive check of "every disjoint S, T with |S| = |T| = cn/2 has
// e(S,T) >= cn". Throws BudgetExceeded when C(N,k) * C(N-k,k) exceeds
// `budget`.
ExpansionVerdict arrows_by_expansion(const Graph& g, std::size_t n, double c,
                                     std::uint64_t budget = kDefaultExpansionBudget);

// Red edges: a spanning forest (edge-index greedy); everything else blue.
EdgeColoring spanning_tree_strategy(const Graph& g);

// Red edges: those with exactly one end in `a`. `a` must be independent in
// the square of g, which makes the red subgraph a union of vertex-disjoint
// stars centred in `a`.
EdgeColoring star_strategy(const Graph& g, const VertexSet& a);

struct TwoCaseResult {
  EdgeColoring coloring;
  int case_label = 1;  // 1: |B| <= b|A|, 2: |B| > b|A|
  VertexSet a;         // inside V \ B, independent in the square of G[V \ B]
  VertexSet b;         // degree >= d + 1
  // |B| > 2a/(d+1) |V|, so the graph has more than a|V| edges and the
  // lower-bound argument needs no coloring at all.
  bool dense_shortcut = false;
};

TwoCaseResult two_case_strategy(const Graph& g, double a_const, double b_const,
                                std::size_t d_const);

}  // namespace sizeramsey
