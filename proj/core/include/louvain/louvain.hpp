#pragma once

#include <vector>

#include "louvain/quality.hpp"

namespace louvain {

struct LouvainParams {
  int max_passes = 10;
  int max_iterations = 20;          // local-moving iterations per pass
  double initial_tolerance = 0.01;  // iteration stops when its summed gain falls to this
  double tolerance_drop = 10.0;     // tolerance divisor applied after every aggregation
  double aggregation_tolerance = 0.8;  // stop when communities/vertices exceeds this ratio
  int thread_count = 0;             // 0: OpenMP default
  int chunk_size = 2048;            // dynamic-schedule grain for vertex loops
  bool prune = true;                // revisit only vertices whose neighborhood changed
};

struct PhaseTimes {
  double local_moving = 0.0;
  double aggregation = 0.0;
  double other = 0.0;  // resets, renumbering, dendrogram lookups

  double total() const { return local_moving + aggregation + other; }
};

struct LouvainResult {
  Membership membership;  // contiguous community ids over the input vertices
  CommunityId num_communities = 0;
  double modularity = 0.0;  // recomputed on the input graph with the final membership
  int passes = 0;
  int aggregations = 0;
  std::vector<int> iterations_per_pass;
  std::vector<double> tolerance_per_pass;
  std::vector<double> pass_seconds;
  PhaseTimes phase;
  double wall_seconds = 0.0;
};

}  // namespace louvain
