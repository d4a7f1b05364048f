#pragma once

#include <cstdint>

#include "louvain/graph.hpp"
#include "louvain/quality.hpp"

namespace louvain {

// Seed-deterministic generators used by the tests and benchmarks.

// n vertices in `blocks` near-equal groups; every unordered pair is linked
// with probability p_in inside a group, p_out across groups. Unit weights.
EdgeList planted_partition(VertexId n, int blocks, double p_in, double p_out, std::uint64_t seed);

// Samples `edges` unordered pairs uniformly (duplicates merge at CSR build).
// Weights uniform in (wmin, wmax]; with integer_weights they are rounded up
// to whole numbers. self_loops permits u == v draws.
EdgeList random_edges(VertexId n, EdgeOffset edges, double wmin, double wmax, std::uint64_t seed,
                      bool self_loops = false, bool integer_weights = false);

// Uniform labels in [0, communities); not necessarily surjective.
Membership random_membership(VertexId n, CommunityId communities, std::uint64_t seed);

}  // namespace louvain
