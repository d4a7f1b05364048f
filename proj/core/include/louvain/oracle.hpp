#pragma once

#include <utility>

#include "louvain/graph.hpp"
#include "louvain/louvain.hpp"
#include "louvain/quality.hpp"

namespace louvain {

// Reference implementations built from deliberately plain data structures
// (ordered maps, full enumeration). They share the graph container and the
// quality formulas with the engines they check, and nothing else: no scan
// scratch, no hashtables, no prefix-sum plumbing.

// Single-threaded Louvain, vertices visited in ascending id order, ordered-
// map scans. Same parameters and stopping rules as the parallel engines;
// byte-for-byte deterministic for a given graph and parameter set.
LouvainResult sequential_louvain(const CsrGraph& g, const LouvainParams& params = {});

struct BestPartition {
  Membership membership;  // canonical: community ids in first-appearance order
  double modularity = 0.0;
};

inline constexpr VertexId kExhaustiveLimit = 10;

// Evaluates every partition of the vertex set (Bell(n) many), enumerated as
// restricted growth strings in lexicographic order; ties keep the earliest,
// i.e. lexicographically smallest, string. Refuses graphs larger than
// kExhaustiveLimit vertices.
BestPartition exhaustive_best_partition(const CsrGraph& g);

// Moving vertex i to `target`: returns (formula gain, exact Q difference),
// the former from delta_modularity, the latter from two full modularity
// evaluations. Gathers its own neighbor weights by direct arc scan.
std::pair<double, double> check_delta(const CsrGraph& g, const Membership& membership, VertexId i,
                                      CommunityId target);

}  // namespace louvain
