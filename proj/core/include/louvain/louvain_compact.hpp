#pragma once

#include <utility>
#include <vector>

#include "louvain/compact_hashtable.hpp"
#include "louvain/graph.hpp"
#include "louvain/louvain.hpp"
#include "louvain/quality.hpp"

namespace louvain {

// Damping schedule against move oscillation: on an active iteration a vertex
// may only move to a community with a lower id than its current one. Two
// vertices that keep swapping into each other's community break the cycle on
// the first active iteration. period must be even and >= 2.
struct PickLessSchedule {
  int period = 4;
};

// Active iterations are period/2, then every period-th after that.
inline bool pick_less_active(int iteration, int period) {
  return (iteration + period / 2) % period == 0;
}

// Degree thresholds splitting work between the two sweep kernels: vertices
// (or communities, during aggregation) below the threshold are handled one
// per worker with a serial scan, the rest by the whole team cooperating on
// one vertex at a time.
struct SwitchDegrees {
  EdgeOffset move = 64;
  EdgeOffset aggregate = 128;
};

struct CompactOptions {
  PickLessSchedule pick_less;
  SwitchDegrees switch_degrees;
  Probing probing = Probing::quadratic_double;
  int value_bits = 32;  // scan-table value width, 32 or 64; gain math is double either way
};

// Slab storage backing the per-vertex scan tables: vertex v owns
// keys/values[2*offsets[v], 2*offsets[v+1]), which always fits its table
// because next_pow2(d) - 1 <= 2d - 1. Sized once for the input graph and
// reused by every pass (aggregated graphs only shrink).
template <class V>
struct CompactSlabs {
  std::vector<CommunityId> keys;
  std::vector<V> values;

  explicit CompactSlabs(EdgeOffset num_arcs)
      : keys(2 * num_arcs, kEmptySlot), values(2 * num_arcs, V{0}) {}
};

// Engine with flat-slab hashtables and the two-kernel sweep; same pass shell
// and parameters as louvain_mc, plus the pick-less damping.
LouvainResult louvain_compact(const CsrGraph& g, const LouvainParams& params = {},
                              const CompactOptions& options = {});

// Decision the engine would take for vertex u under the current state,
// without applying it: scans u's neighborhood into its slab table, turns the
// entries into gains and returns the best (community, gain). Takes the serial
// path when degree(u) < options.switch_degrees.move, otherwise the
// worker-team path; the two paths must agree.
template <class V>
std::pair<CommunityId, double> compact_evaluate_move(const CsrGraph& g,
                                                     const Membership& membership,
                                                     const std::vector<double>& vertex_w,
                                                     const std::vector<double>& community_w,
                                                     double m, VertexId u,
                                                     const CompactOptions& options,
                                                     CompactSlabs<V>& slabs);

// Aggregation with per-community slab tables sized by community total
// degree; value width follows options.value_bits.
CsrGraph compact_aggregate(const CsrGraph& g, const Membership& membership,
                           const LouvainParams& params = {}, const CompactOptions& options = {});

}  // namespace louvain
