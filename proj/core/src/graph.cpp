#include "louvain/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>

#include <omp.h>

#include "louvain/prefix_sum.hpp"

namespace louvain {

CsrGraph build_csr(const EdgeList& edges, bool symmetrize) {
  const VertexId n = edges.num_vertices;
  if (n >= kInvalidVertex)
    throw std::invalid_argument("vertex count collides with the reserved sentinel id");

  std::vector<EdgeOffset> counts(n, 0);
  for (const EdgeTriple& t : edges.triples) {
    if (t.source >= n || t.target >= n)
      throw std::invalid_argument("edge endpoint out of range");
    if (!std::isfinite(t.weight) || t.weight < 0.0)
      throw std::invalid_argument("edge weight must be finite and non-negative");
    ++counts[t.source];
    if (symmetrize && t.source != t.target) ++counts[t.target];
  }

  // Place raw arcs, then sort each row and merge parallel arcs in double.
  std::vector<EdgeOffset> raw_offsets = exclusive_scan_sequential(counts);
  std::vector<VertexId> raw_targets(raw_offsets.back());
  std::vector<double> raw_weights(raw_offsets.back());
  std::vector<EdgeOffset> cursor(raw_offsets.begin(), raw_offsets.end() - 1);
  for (const EdgeTriple& t : edges.triples) {
    raw_targets[cursor[t.source]] = t.target;
    raw_weights[cursor[t.source]] = t.weight;
    ++cursor[t.source];
    if (symmetrize && t.source != t.target) {
      raw_targets[cursor[t.target]] = t.source;
      raw_weights[cursor[t.target]] = t.weight;
      ++cursor[t.target];
    }
  }

  std::vector<EdgeOffset> merged_counts(n, 0);
#pragma omp parallel
  {
    std::vector<std::pair<VertexId, double>> row;
#pragma omp for schedule(dynamic, 1024)
    for (std::int64_t v = 0; v < static_cast<std::int64_t>(n); ++v) {
      const EdgeOffset lo = raw_offsets[v];
      const EdgeOffset hi = raw_offsets[v + 1];
      row.assign(hi - lo, {});
      for (EdgeOffset a = lo; a < hi; ++a) row[a - lo] = {raw_targets[a], raw_weights[a]};
      std::sort(row.begin(), row.end());
      EdgeOffset out = lo;
      for (std::size_t k = 0; k < row.size();) {
        const VertexId target = row[k].first;
        double weight = 0.0;
        for (; k < row.size() && row[k].first == target; ++k) weight += row[k].second;
        raw_targets[out] = target;
        raw_weights[out] = weight;
        ++out;
      }
      merged_counts[v] = out - lo;
    }
  }

  CsrGraph g;
  g.offsets = exclusive_scan(merged_counts);
  g.targets.resize(g.offsets.back());
  g.weights.resize(g.offsets.back());
  double arc_weight = 0.0;
#pragma omp parallel for schedule(dynamic, 1024) reduction(+ : arc_weight)
  for (std::int64_t v = 0; v < static_cast<std::int64_t>(n); ++v) {
    EdgeOffset out = g.offsets[v];
    for (EdgeOffset a = raw_offsets[v]; a < raw_offsets[v] + merged_counts[v]; ++a, ++out) {
      g.targets[out] = raw_targets[a];
      const Weight w = static_cast<Weight>(raw_weights[a]);
      g.weights[out] = w;
      arc_weight += static_cast<double>(w);
    }
  }
  g.total_weight = arc_weight / 2.0;
  return g;
}

std::vector<double> vertex_weights(const CsrGraph& g) {
  std::vector<double> k(g.num_vertices(), 0.0);
#pragma omp parallel for schedule(static)
  for (std::int64_t v = 0; v < static_cast<std::int64_t>(g.num_vertices()); ++v) {
    double s = 0.0;
    for (const Weight w : g.arc_weights(static_cast<VertexId>(v))) s += static_cast<double>(w);
    k[v] = s;
  }
  return k;
}

CsrGraph compact_holey(const HoleyCsr& h) {
  const VertexId n = h.num_vertices();
  CsrGraph g;
  g.offsets = exclusive_scan(h.fill);
  g.targets.resize(g.offsets.back());
  g.weights.resize(g.offsets.back());
  double arc_weight = 0.0;
#pragma omp parallel for schedule(dynamic, 1024) reduction(+ : arc_weight)
  for (std::int64_t v = 0; v < static_cast<std::int64_t>(n); ++v) {
    EdgeOffset out = g.offsets[v];
    const EdgeOffset lo = h.offsets[v];
    for (EdgeOffset a = lo; a < lo + h.fill[v]; ++a, ++out) {
      g.targets[out] = h.targets[a];
      g.weights[out] = h.weights[a];
      arc_weight += static_cast<double>(h.weights[a]);
    }
  }
  g.total_weight = arc_weight / 2.0;
  return g;
}

EdgeList to_edge_list(const CsrGraph& g) {
  EdgeList el;
  el.num_vertices = g.num_vertices();
  el.triples.reserve(g.num_arcs());
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const auto targets = g.arc_targets(v);
    const auto weights = g.arc_weights(v);
    for (std::size_t k = 0; k < targets.size(); ++k)
      el.triples.push_back({v, targets[k], static_cast<double>(weights[k])});
  }
  return el;
}

}  // namespace louvain
