#include "sizeramsey/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sizeramsey/error.hpp"

namespace sizeramsey {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed),
      stream_(stream),
      engine_(splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL))) {}

RandomSource RandomSource::substream(std::uint64_t index) const {
  return RandomSource(seed_, splitmix64(stream_) ^ (index + 1));
}

std::uint64_t RandomSource::uniform_below(std::uint64_t bound) {
  require(bound > 0, "uniform_below needs a positive bound");
  // Largest multiple of bound that fits; reject above it.
  const std::uint64_t limit = (~std::uint64_t{0} / bound) * bound;
  while (true) {
    std::uint64_t x = next_u64();
    if (limit == 0 || x < limit) return x % bound;
  }
}

std::uint64_t bernoulli_threshold(double p) {
  if (!(p > 0.0)) return 0;
  if (p >= 1.0) return ~std::uint64_t{0};
  return static_cast<std::uint64_t>(std::ldexp(p, 64));
}

bool RandomSource::bernoulli(double p) {
  if (p >= 1.0) {
    next_u64();
    return true;
  }
  return next_u64() < bernoulli_threshold(p);
}

namespace {

void check_probability(double p) {
  require(p >= 0.0 && p <= 1.0,
          "edge probability must lie in [0, 1], got " + std::to_string(p));
}

}  // namespace

Graph gnp(std::size_t n, double p, RandomSource& rng) {
  check_probability(p);
  std::vector<Edge> list;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) list.push_back({u, v});
  return Graph(n, list);
}

BipartiteGraph bipartite_gnp(std::size_t n1, std::size_t n2, double p,
                             RandomSource& rng) {
  check_probability(p);
  std::vector<Edge> list;
  for (Vertex u = 0; u < n1; ++u)
    for (std::size_t j = 0; j < n2; ++j)
      if (rng.bernoulli(p)) list.push_back({u, static_cast<Vertex>(n1 + j)});
  BipartiteGraph out{Graph(n1 + n2, list), std::vector<std::uint8_t>(n1 + n2, 0)};
  std::fill(out.side.begin() + static_cast<std::ptrdiff_t>(n1), out.side.end(),
            std::uint8_t{1});
  return out;
}

Pairing random_pairing(std::size_t n, std::size_t d, RandomSource& rng) {
  require(d >= 1, "pairing degree must be positive");
  require((d * n) % 2 == 0, "pairing needs d*n even");
  std::vector<std::uint32_t> points(d * n);
  std::iota(points.begin(), points.end(), 0U);
  for (std::size_t i = points.size(); i > 1; --i) {
    std::size_t j = rng.uniform_below(i);
    std::swap(points[i - 1], points[j]);
  }
  Pairing out{d, n, {}};
  out.matching.reserve(points.size() / 2);
  for (std::size_t i = 0; i < points.size(); i += 2)
    out.matching.emplace_back(points[i], points[i + 1]);
  return out;
}

MultiGraph project(const Pairing& p) {
  MultiGraph g(p.n);
  for (auto [x, y] : p.matching)
    g.add_edge(static_cast<Vertex>(p.bucket(x)), static_cast<Vertex>(p.bucket(y)));
  return g;
}

Graph random_regular(std::size_t n, std::size_t d, RandomSource& rng,
                     std::size_t max_attempts) {
  require((d * n) % 2 == 0, "d-regular graph needs d*n even");
  require(d < n || n == 0, "degree must be smaller than the vertex count");
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    MultiGraph m = project(random_pairing(n, d, rng));
    if (m.is_simple()) return m.to_graph();
  }
  throw SamplingFailure("no simple pairing after " + std::to_string(max_attempts) +
                        " attempts (n=" + std::to_string(n) +
                        ", d=" + std::to_string(d) + ")");
}

UnionGraph two_round_union(const Graph& first, const Graph& second) {
  require(first.vertex_count() == second.vertex_count(),
          "two-round union needs equal vertex counts");
  std::vector<Edge> merged;
  std::vector<Round> provenance;
  const auto& a = first.edges();
  const auto& b = second.edges();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i] < b[j])) {
      merged.push_back(a[i++]);
      provenance.push_back(Round::first);
    } else if (i == a.size() || b[j] < a[i]) {
      merged.push_back(b[j++]);
      provenance.push_back(Round::second);
    } else {
      merged.push_back(a[i]);
      provenance.push_back(Round::both);
      ++i;
      ++j;
    }
  }
  return {Graph(first.vertex_count(), merged), std::move(provenance), {}};
}

UnionGraph two_round_union(const BipartiteGraph& first,
                           const BipartiteGraph& second) {
  require(first.side == second.side, "two-round union needs the same bipartition");
  UnionGraph out = two_round_union(first.graph, second.graph);
  out.side = first.side;
  return out;
}

}  // namespace sizeramsey
