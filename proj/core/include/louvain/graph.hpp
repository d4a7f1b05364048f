#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace louvain {

using VertexId = std::uint32_t;
using CommunityId = std::uint32_t;
using EdgeOffset = std::uint64_t;
using Weight = float;  // arc storage; all accumulation happens in double

// Reserved by the clustering engines as the empty-slot marker, so graphs with
// 2^32-1 vertices are rejected at construction.
inline constexpr VertexId kInvalidVertex = std::numeric_limits<VertexId>::max();

struct EdgeTriple {
  VertexId source = 0;
  VertexId target = 0;
  double weight = 1.0;

  friend bool operator==(const EdgeTriple&, const EdgeTriple&) = default;
};

// Raw parse result of an input file: triples as stored, no symmetrization,
// no duplicate merging.
struct EdgeList {
  VertexId num_vertices = 0;
  std::vector<EdgeTriple> triples;
};

// Undirected weighted graph in compressed sparse row form. Every undirected
// edge {u,v}, u != v, is stored as two arcs (u,v) and (v,u) of equal weight;
// a self-loop is stored as a single arc. total_weight is m, half the arc
// weight sum; under this convention a self-loop of weight w adds w to m.
struct CsrGraph {
  std::vector<EdgeOffset> offsets;  // size num_vertices()+1
  std::vector<VertexId> targets;    // size num_arcs(), sorted within each row
  std::vector<Weight> weights;      // parallel to targets
  double total_weight = 0.0;        // m

  VertexId num_vertices() const { return offsets.empty() ? 0 : static_cast<VertexId>(offsets.size() - 1); }
  EdgeOffset num_arcs() const { return offsets.empty() ? 0 : offsets.back(); }
  EdgeOffset degree(VertexId u) const { return offsets[u + 1] - offsets[u]; }

  std::span<const VertexId> arc_targets(VertexId u) const {
    return {targets.data() + offsets[u], targets.data() + offsets[u + 1]};
  }
  std::span<const Weight> arc_weights(VertexId u) const {
    return {weights.data() + offsets[u], weights.data() + offsets[u + 1]};
  }
};

// Over-allocated CSR used while an aggregated graph is being written: each
// row owns the span [offsets[v], offsets[v+1]) but only the first fill[v]
// slots hold arcs.
struct HoleyCsr {
  std::vector<EdgeOffset> offsets;
  std::vector<VertexId> targets;
  std::vector<Weight> weights;
  std::vector<EdgeOffset> fill;  // per-row written count, fill[v] <= span

  VertexId num_vertices() const { return offsets.empty() ? 0 : static_cast<VertexId>(offsets.size() - 1); }
};

// Builds the symmetric CSR the engines run on. With symmetrize set, every
// off-diagonal triple contributes arcs in both directions; self-loops stay
// single arcs. Parallel arcs (duplicates after symmetrization) are merged by
// weight summation, rows come out sorted by target. With symmetrize unset the
// triples are taken as the literal arc set; the caller is responsible for it
// being symmetric.
CsrGraph build_csr(const EdgeList& edges, bool symmetrize);

// K_i per vertex: sum of incident arc weights, self-loop counted once. The
// sum over all vertices equals 2m.
std::vector<double> vertex_weights(const CsrGraph& g);

// Drops the unfilled tail of every row and recomputes offsets/total weight.
CsrGraph compact_holey(const HoleyCsr& h);

// Inverse of build_csr up to arc order: one triple per stored arc.
EdgeList to_edge_list(const CsrGraph& g);

}  // namespace louvain
