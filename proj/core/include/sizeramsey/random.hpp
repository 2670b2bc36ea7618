#pragma once

// Probability spaces: binomial G(n,p), bipartite G(n1,n2,p), the pairing
// (configuration) model of d-regular graphs, and two-round exposure.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "sizeramsey/graph.hpp"

namespace sizeramsey {

// Seeded 64-bit source. The engine is std::mt19937_64, whose output sequence
// is fixed by the standard; every derived quantity (uniform doubles, bounded
// integers, Bernoulli trials) is computed here with integer arithmetic only,
// so a seed reproduces the same draws on every platform.
//
// substream(k) derives an independent source for trial k by mixing
// (seed, k) through SplitMix64.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  // Number of 64-bit words drawn so far.
  std::uint64_t position() const { return position_; }

  std::uint64_t next_u64() {
    ++position_;
    return engine_();
  }
  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  // Uniform in [0, bound), bound > 0, unbiased (rejection).
  std::uint64_t uniform_below(std::uint64_t bound);
  // True with probability p (p clamped to [0, 1]); exact to 2^-64.
  bool bernoulli(double p);

  RandomSource substream(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t position_ = 0;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

// Bernoulli threshold t with P(u < t) = p for u uniform on 64 bits; p == 1
// is handled separately by callers of bernoulli().
std::uint64_t bernoulli_threshold(double p);

Graph gnp(std::size_t n, double p, RandomSource& rng);

struct BipartiteGraph {
  Graph graph;
  // side[v] in {0, 1}; vertices 0..n1-1 are side 0, n1..n1+n2-1 side 1.
  std::vector<std::uint8_t> side;
};

BipartiteGraph bipartite_gnp(std::size_t n1, std::size_t n2, double p,
                             RandomSource& rng);

// Perfect matching on d*n points; point x lives in bucket x / d.
struct Pairing {
  std::size_t d = 0;
  std::size_t n = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> matching;

  std::size_t bucket(std::uint32_t point) const { return point / d; }
};

// Uniform pairing: Fisher-Yates shuffle of the point labels, then
// consecutive points are paired.
Pairing random_pairing(std::size_t n, std::size_t d, RandomSource& rng);

MultiGraph project(const Pairing& p);

inline constexpr std::size_t kDefaultRegularAttempts = 10'000;

// Uniform simple d-regular graph by rejection over pairings. Throws
// SamplingFailure after max_attempts non-simple projections.
Graph random_regular(std::size_t n, std::size_t d, RandomSource& rng,
                     std::size_t max_attempts = kDefaultRegularAttempts);

enum class Round : std::uint8_t { first = 1, second = 2, both = 3 };

struct UnionGraph {
  Graph graph;
  // Indexed by edge index of `graph`.
  std::vector<Round> provenance;
  // Present when both rounds were bipartite with the same partition.
  std::vector<std::uint8_t> side;
};

UnionGraph two_round_union(const Graph& first, const Graph& second);
UnionGraph two_round_union(const BipartiteGraph& first,
                           const BipartiteGraph& second);

}  // namespace sizeramsey
