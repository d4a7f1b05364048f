#include "louvain/quality.hpp"

#include <algorithm>

#include "louvain/errors.hpp"

namespace louvain {

CommunityAggregates community_aggregates(const CsrGraph& g, const Membership& membership) {
  CommunityId width = 0;
  for (const CommunityId c : membership) width = std::max(width, c);
  if (!membership.empty()) ++width;

  CommunityAggregates agg;
  agg.sigma_total.assign(width, 0.0);
  agg.sigma_internal.assign(width, 0.0);
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const CommunityId c = membership[v];
    const auto targets = g.arc_targets(v);
    const auto weights = g.arc_weights(v);
    for (std::size_t k = 0; k < targets.size(); ++k) {
      const double w = static_cast<double>(weights[k]);
      agg.sigma_total[c] += w;
      if (membership[targets[k]] == c) agg.sigma_internal[c] += w;
    }
  }
  return agg;
}

double modularity(const CsrGraph& g, const Membership& membership) {
  if (!(g.total_weight > 0.0))
    throw DegenerateGraphError("modularity is undefined when the total edge weight is zero");
  const double two_m = 2.0 * g.total_weight;
  const CommunityAggregates agg = community_aggregates(g, membership);
  double q = 0.0;
  for (std::size_t c = 0; c < agg.sigma_total.size(); ++c) {
    const double fraction = agg.sigma_total[c] / two_m;
    q += agg.sigma_internal[c] / two_m - fraction * fraction;
  }
  return q;
}

CommunityId count_communities(const Membership& membership) {
  if (membership.empty()) return 0;
  CommunityId width = 0;
  for (const CommunityId c : membership) width = std::max(width, c);
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(width) + 1, 0);
  CommunityId count = 0;
  for (const CommunityId c : membership) {
    if (!seen[c]) {
      seen[c] = 1;
      ++count;
    }
  }
  return count;
}

}  // namespace louvain
