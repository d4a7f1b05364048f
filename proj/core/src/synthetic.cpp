#include "louvain/synthetic.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace louvain {

EdgeList planted_partition(VertexId n, int blocks, double p_in, double p_out,
                           std::uint64_t seed) {
  if (blocks < 1) throw std::invalid_argument("blocks must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  EdgeList el;
  el.num_vertices = n;
  const auto block_of = [&](VertexId v) {
    return static_cast<std::uint64_t>(v) * static_cast<std::uint64_t>(blocks) / n;
  };
  for (VertexId i = 0; i < n; ++i) {
    for (VertexId j = i + 1; j < n; ++j) {
      const double p = block_of(i) == block_of(j) ? p_in : p_out;
      if (coin(rng) < p) el.triples.push_back({i, j, 1.0});
    }
  }
  return el;
}

EdgeList random_edges(VertexId n, EdgeOffset edges, double wmin, double wmax, std::uint64_t seed,
                      bool self_loops, bool integer_weights) {
  if (n < 2 && !self_loops) throw std::invalid_argument("need at least two vertices");
  if (!(wmax >= wmin)) throw std::invalid_argument("wmax must be >= wmin");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<VertexId> pick(0, n - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  EdgeList el;
  el.num_vertices = n;
  el.triples.reserve(edges);
  for (EdgeOffset e = 0; e < edges; ++e) {
    VertexId u = pick(rng);
    VertexId v = pick(rng);
    while (!self_loops && u == v) v = pick(rng);
    double w = wmin + (wmax - wmin) * (1.0 - unit(rng));  // in (wmin, wmax]
    if (integer_weights) w = std::ceil(w);
    el.triples.push_back({u, v, w});
  }
  return el;
}

Membership random_membership(VertexId n, CommunityId communities, std::uint64_t seed) {
  if (communities < 1) throw std::invalid_argument("communities must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<CommunityId> pick(0, communities - 1);
  Membership m(n);
  for (VertexId v = 0; v < n; ++v) m[v] = pick(rng);
  return m;
}

}  // namespace louvain
