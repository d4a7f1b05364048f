#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "louvain/graph.hpp"
#include "louvain/louvain.hpp"
#include "louvain/quality.hpp"

namespace louvain {

// Per-worker scratch for neighbor-community scans: a dense value array
// indexed by community id plus the list of live keys, so clear() costs
// O(live keys) instead of O(capacity). values[c] == 0 doubles as the
// absence marker, which is sound because arc weights are non-negative;
// zero-weight arcs simply produce no candidate.
class FarKvScratch {
 public:
  explicit FarKvScratch(std::size_t num_vertices) : values_(num_vertices, 0.0) {}

  void add(CommunityId c, double w) {
    if (w == 0.0) return;
    if (values_[c] == 0.0) keys_.push_back(c);
    values_[c] += w;
  }

  void clear() {
    for (CommunityId c : keys_) values_[c] = 0.0;
    keys_.clear();
  }

  double value(CommunityId c) const { return values_[c]; }
  std::span<const CommunityId> keys() const { return keys_; }

 private:
  std::vector<CommunityId> keys_;
  std::vector<double> values_;
};

// Accumulates K_{i->c} for every community c adjacent to vertex i. The
// self-loop participates only when include_self is set: aggregation wants it
// (it becomes intra-community weight), move decisions do not.
inline void scan_communities(FarKvScratch& h, const CsrGraph& g, const Membership& membership,
                             VertexId i, bool include_self) {
  const auto targets = g.arc_targets(i);
  const auto weights = g.arc_weights(i);
  for (std::size_t k = 0; k < targets.size(); ++k) {
    if (!include_self && targets[k] == i) continue;
    h.add(membership[targets[k]], static_cast<double>(weights[k]));
  }
}

// Best destination for vertex i among the scanned communities: maximum
// delta_modularity, ties to the lowest community id. Staying put counts as
// gain 0, so a move is only reported for strictly positive gain; an isolated
// vertex yields (current, 0).
inline std::pair<CommunityId, double> best_community(const FarKvScratch& h, VertexId i,
                                                     CommunityId current,
                                                     const std::vector<double>& vertex_w,
                                                     const std::vector<double>& community_w,
                                                     double m) {
  CommunityId best = current;
  double best_gain = 0.0;
  const double k_to_current = h.value(current);
  for (CommunityId c : h.keys()) {
    if (c == current) continue;
    const double gain = delta_modularity(h.value(c), k_to_current, vertex_w[i],
                                         community_w[c], community_w[current], m);
    if (gain > best_gain || (gain == best_gain && gain > 0.0 && c < best)) {
      best = c;
      best_gain = gain;
    }
  }
  return {best, best_gain};
}

// One local-moving phase. Sweeps all vertices in parallel, moving each to its
// best community and marking the neighbors of movers for revisit; iterates
// until the summed gain of a sweep is at most `tolerance` or
// params.max_iterations sweeps ran. Returns the number of sweeps performed.
// membership and community_w are updated in place; community_w updates are
// atomic, membership stores are plain (a stale read alters only which valid
// configuration a concurrent decision sees, not correctness).
int louvain_move(const CsrGraph& g, Membership& membership, const std::vector<double>& vertex_w,
                 std::vector<double>& community_w, std::vector<std::uint8_t>& unprocessed,
                 double m, double tolerance, const LouvainParams& params,
                 std::vector<std::unique_ptr<FarKvScratch>>& scratch);

// Super-vertex graph of a contiguous membership: vertex per community, arc
// (c,d) carrying the total inter-community weight, intra-community weight
// (including member self-loops, each internal edge from both ends) as the
// self-loop of c. Conserves total weight.
CsrGraph louvain_aggregate(const CsrGraph& g, const Membership& membership,
                           const LouvainParams& params = {});

// Remaps community ids onto 0..count-1, assigned in ascending order of the
// old ids. Returns the count.
CommunityId renumber_communities(Membership& membership, int thread_count = 0);

// membership[i] <- level[membership[i]]; throws InternalError when an entry
// is out of range for `level` (pipeline bug, not user input).
void lookup_dendrogram(Membership& membership, const Membership& level, int thread_count = 0);

// Multicore engine: local moving + aggregation passes with per-pass tolerance
// scaling, vertex pruning and low-shrink cutoff.
LouvainResult louvain_mc(const CsrGraph& g, const LouvainParams& params = {});

}  // namespace louvain
