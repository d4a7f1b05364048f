#pragma once

#include <vector>

#include "louvain/graph.hpp"

namespace louvain {

// membership[v] = community id of v. Engines return contiguous ids
// (0..count-1); the quality functions accept any labeling.
using Membership = std::vector<CommunityId>;

struct CommunityAggregates {
  // sigma_total[c]: sum of K_i over members (Sigma_c).
  // sigma_internal[c]: arc weight with both endpoints in c; each internal
  // undirected edge contributes both its arcs, a self-loop its single arc.
  std::vector<double> sigma_total;
  std::vector<double> sigma_internal;
};

// One pass over the arcs; accumulation in double regardless of arc storage
// width. Arrays are sized max community id + 1.
CommunityAggregates community_aggregates(const CsrGraph& g, const Membership& membership);

// Q = sum_c [sigma_c/(2m) - (Sigma_c/(2m))^2], in [-1/2, 1].
// Throws DegenerateGraphError when m == 0.
double modularity(const CsrGraph& g, const Membership& membership);

// Gain of moving vertex i from community d to community c:
//   (k_i_to_c - k_i_to_d)/m - k_i*(k_i + sigma_c - sigma_d)/(2 m^2)
// where sigma_d still includes k_i (the vertex has not left yet) and sigma_c
// does not. k_i_to_* exclude i's self-loop. Equals the exact modularity
// difference of the single-vertex move.
inline double delta_modularity(double k_i_to_c, double k_i_to_d, double k_i,
                               double sigma_c, double sigma_d, double m) {
  return (k_i_to_c - k_i_to_d) / m - k_i * (k_i + sigma_c - sigma_d) / (2.0 * m * m);
}

// Number of distinct ids present in the membership array.
CommunityId count_communities(const Membership& membership);

}  // namespace louvain
