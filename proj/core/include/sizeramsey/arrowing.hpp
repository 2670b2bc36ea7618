#pragma once

// Ground-truth arrowing at tiny scale, the clique/cycle Ramsey formula, the
// chord-closing construction of a cycle of exact length, and the sampled
// expansion estimator used when exhaustive checks are out of reach.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sizeramsey/coloring.hpp"
#include "sizeramsey/graph.hpp"
#include "sizeramsey/random.hpp"

namespace sizeramsey {

enum class RedFamily : std::uint8_t {
  cycles_at_most,  // C_{<=L}
  cycle_exact,     // C_L
};

enum class BlueTarget : std::uint8_t {
  path,    // P_k, k vertices
  clique,  // K_k
};

// G -> (red family, blue target): every coloring has a red member of the
// family or a blue copy of the target.
struct ArrowQuery {
  RedFamily red = RedFamily::cycles_at_most;
  std::size_t cycle_length = 3;  // L
  BlueTarget blue = BlueTarget::path;
  std::size_t target_order = 2;  // k

  static ArrowQuery cycles_vs_path(std::size_t cap, std::size_t path_vertices) {
    return {RedFamily::cycles_at_most, cap, BlueTarget::path, path_vertices};
  }
  static ArrowQuery cycles_vs_clique(std::size_t cap, std::size_t clique_order) {
    return {RedFamily::cycles_at_most, cap, BlueTarget::clique, clique_order};
  }

  std::string describe() const;
};

inline constexpr std::size_t kDefaultArrowEdgeBudget = 25;

struct ArrowVerdict {
  bool arrows = true;
  // Lowest-index defeating coloring (bit e of the index = edge e is blue).
  std::optional<EdgeColoring> counterexample;
  // Colorings decided: the whole space when arrowing, otherwise the
  // counterexample's index + 1.
  std::uint64_t colorings_checked = 0;
};

// Exhaustive over all 2^m colorings. Needs at most 63 vertices and
// m <= edge_budget (BudgetExceeded otherwise). Runs on `threads` workers
// (0 = hardware concurrency); the result does not depend on the count.
ArrowVerdict arrows_exact(const Graph& g, const ArrowQuery& q,
                          std::size_t edge_budget = kDefaultArrowEdgeBudget,
                          unsigned threads = 0);

// Colour-level predicates shared with the search; exposed for tests.
bool has_red_member(const Graph& g, const EdgeColoring& col, const ArrowQuery& q);
bool has_blue_target(const Graph& g, const EdgeColoring& col, const ArrowQuery& q);

// R(C_{<=cap}, K_n): 2n-1 when cap >= 2n-1, else 2n. Needs n >= 2 and
// cap > n.
std::size_t ramsey_cycles_vs_clique(std::size_t n, std::size_t cap);

struct MinSizeResult {
  bool found = false;
  std::size_t edges = 0;       // minimal edge count within the vertex cap
  Graph witness;               // an arrowing graph with that many edges
  std::size_t vertex_cap = 0;  // result is exact among graphs on <= cap vertices
  std::uint64_t candidates_checked = 0;  // non-isomorphic graphs decided
};

// Smallest m such that some graph on <= max_vertices vertices with m edges
// arrows q; an upper bound on the size-Ramsey number. Graphs are generated
// edge-count by edge-count and deduplicated by a degree-refined canonical
// form. Forests are skipped (the all-red coloring defeats them).
MinSizeResult min_size_ramsey_exact(const ArrowQuery& q, std::size_t max_vertices,
                                    std::size_t edge_budget = kDefaultArrowEdgeBudget);

// Canonical adjacency code: minimum over vertex orders that sort by degree.
std::uint64_t canonical_code(const Graph& g);

// --------------------------------------------------------- cycle closing

struct ChordPair {
  std::size_t first_pos;   // position on path 1 (1-based)
  std::size_t second_pos;  // position on path 2 (1-based)
  friend auto operator<=>(const ChordPair&, const ChordPair&) = default;
};

struct ChordCandidates {
  std::vector<ChordPair> left;   // {v_l, u_L}, l, L < m, (m-l+1)+(m-L) = i
  std::vector<ChordPair> right;  // {v_r, u_R}, r, R > m, (r-m+1)+(R-m) = n-i
};

// m = 3n/4 is the middle position of each half path of 3n/2 vertices.
ChordCandidates chord_candidates(std::size_t n, std::size_t i);

struct CycleWitness {
  std::vector<Vertex> cycle;        // exactly n distinct vertices, closed
  std::pair<Edge, Edge> chords;     // {v_l, u_L} and {u_R, v_r}
  std::size_t left_length = 0;      // i
  std::size_t right_length = 0;     // n - i
  ChordPair left;                   // (l, L)
  ChordPair right;                  // (r, R)
};

// Searches even i in [n/4, 3n/4] ascending, then l ascending, then r
// ascending, for chords present in `chords` that close a cycle of exactly n
// vertices through both path middles. path1 = (v_1..v_{3n/2}),
// path2 = (u_1..u_{3n/2}); n must be divisible by 4.
std::optional<CycleWitness> close_cycle(const std::vector<Vertex>& path1,
                                        const std::vector<Vertex>& path2,
                                        const Graph& chords, std::size_t n);

// Splits a path on >= 3n vertices into the two halves close_cycle expects,
// with both middles on the same side of the bipartition; shifts by one
// vertex (dropping the first) when the parities disagree.
std::pair<std::vector<Vertex>, std::vector<Vertex>> split_path_for_closing(
    const std::vector<Vertex>& path, std::size_t n,
    const std::vector<std::uint8_t>& side);

// ------------------------------------------------- sampled expansion check

enum class RandomModel : std::uint8_t { binomial, regular_pairing };

struct ExpansionMcConfig {
  RandomModel model = RandomModel::binomial;
  std::size_t vertices = 0;     // order of the sampled graph
  double p = 0.0;               // edge probability (binomial)
  std::size_t degree = 0;       // d (regular_pairing, multigraph projection)
  std::size_t s_size = 0;
  std::size_t t_size = 0;
  double threshold = 0.0;       // failure: e(S,T) <= threshold
  std::size_t trials = 1;       // sampled graphs
  std::size_t pairs_per_graph = 1;
  double z = 3.0;               // interval half-width in standard errors
};

struct ExpansionTrial {
  std::size_t trial = 0;
  std::size_t failures = 0;       // sampled pairs with e(S,T) <= threshold
  std::size_t min_crossing = 0;
  double crossing_sum = 0.0;
  double crossing_sq_sum = 0.0;
};

struct ExpansionEstimate {
  std::size_t samples = 0;  // (S,T) pairs examined in total
  std::size_t failures = 0;
  double frequency = 0.0;
  double ci_low = 0.0;   // Wilson score interval at z
  double ci_high = 0.0;
  double mean_crossing = 0.0;
  double mean_crossing_stderr = 0.0;
  // Sampled pairs only: the exhaustive event "some pair fails" is at least
  // as likely as what is observed here.
  static constexpr const char* kCaveat =
      "sampled (S,T) pairs; underestimates the probability that some pair fails";
};

// One trial: samples a graph and pairs_per_graph random disjoint (S,T).
ExpansionTrial expansion_trial(const ExpansionMcConfig& cfg, std::size_t index,
                               RandomSource rng);

ExpansionEstimate summarize(const ExpansionMcConfig& cfg,
                            const std::vector<ExpansionTrial>& trials);

// Trials run on substreams rng.substream(k), so results do not depend on
// `threads`.
ExpansionEstimate monte_carlo_expansion(const ExpansionMcConfig& cfg,
                                        const RandomSource& rng,
                                        unsigned threads = 1);

}  // namespace sizeramsey
