#pragma once

// Small graphs with hand-computed modularity values, used across the suite.

#include "louvain/graph.hpp"

namespace fixtures {

using louvain::EdgeList;

// 0-1-2 fully connected. Best partition: everything together, Q = 0.
inline EdgeList triangle() {
  return {3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}}};
}

// Best partition: both endpoints together, Q = 0; singletons give -1/2.
inline EdgeList single_edge() {
  return {2, {{0, 1, 1.0}}};
}

// Two disjoint triangles; one community per triangle, Q = 1/2.
inline EdgeList two_triangles() {
  return {6,
          {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}, {3, 4, 1.0}, {4, 5, 1.0}, {3, 5, 1.0}}};
}

// Two triangles joined by the bridge 2-3; one community per triangle,
// Q = 2*(6/14 - (7/14)^2) = 5/14.
inline EdgeList barbell() {
  return {6,
          {{0, 1, 1.0},
           {1, 2, 1.0},
           {0, 2, 1.0},
           {3, 4, 1.0},
           {4, 5, 1.0},
           {3, 5, 1.0},
           {2, 3, 1.0}}};
}

}  // namespace fixtures
