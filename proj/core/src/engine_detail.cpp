#include "engine_detail.hpp"

#include <cstdint>
#include <stdexcept>

#include <omp.h>

#include "louvain/prefix_sum.hpp"

namespace louvain::detail {

int resolve_threads(int requested) {
  return requested > 0 ? requested : omp_get_max_threads();
}

void validate_params(const LouvainParams& params) {
  if (params.max_passes < 0) throw std::invalid_argument("max_passes must be >= 0");
  if (params.max_iterations < 0) throw std::invalid_argument("max_iterations must be >= 0");
  if (!(params.tolerance_drop > 0.0)) throw std::invalid_argument("tolerance_drop must be > 0");
  if (!(params.aggregation_tolerance > 0.0))
    throw std::invalid_argument("aggregation_tolerance must be > 0");
  if (params.thread_count < 0) throw std::invalid_argument("thread_count must be >= 0");
  if (params.chunk_size < 1) throw std::invalid_argument("chunk_size must be >= 1");
}

void identity_membership(Membership& membership, VertexId n, int threads) {
  membership.resize(n);
#pragma omp parallel for schedule(static) num_threads(threads)
  for (std::int64_t v = 0; v < static_cast<std::int64_t>(n); ++v)
    membership[v] = static_cast<CommunityId>(v);
}

void vertex_weights_into(const CsrGraph& g, std::vector<double>& out, int threads) {
  const VertexId n = g.num_vertices();
  out.resize(n);
#pragma omp parallel for schedule(static) num_threads(threads)
  for (std::int64_t v = 0; v < static_cast<std::int64_t>(n); ++v) {
    double s = 0.0;
    for (const Weight w : g.arc_weights(static_cast<VertexId>(v))) s += static_cast<double>(w);
    out[v] = s;
  }
}

void build_community_csr(const Membership& membership, CommunityId count, int threads,
                         CommunityCsr& out) {
  const std::int64_t n = static_cast<std::int64_t>(membership.size());
  std::vector<EdgeOffset> counts(count, 0);
#pragma omp parallel for schedule(static) num_threads(threads)
  for (std::int64_t v = 0; v < n; ++v) {
#pragma omp atomic
    ++counts[membership[v]];
  }
  out.offsets = exclusive_scan(counts, threads);
  out.members.resize(membership.size());
  std::vector<EdgeOffset> cursor(count, 0);
#pragma omp parallel for schedule(static) num_threads(threads)
  for (std::int64_t v = 0; v < n; ++v) {
    const CommunityId c = membership[v];
    EdgeOffset slot;
#pragma omp atomic capture
    slot = cursor[c]++;
    out.members[out.offsets[c] + slot] = static_cast<VertexId>(v);
  }
}

void community_total_degrees(const CsrGraph& g, const Membership& membership, CommunityId count,
                             int threads, std::vector<EdgeOffset>& out) {
  out.assign(count, 0);
#pragma omp parallel for schedule(static) num_threads(threads)
  for (std::int64_t v = 0; v < static_cast<std::int64_t>(g.num_vertices()); ++v) {
    const EdgeOffset d = g.degree(static_cast<VertexId>(v));
#pragma omp atomic
    out[membership[v]] += d;
  }
}

void compact_holey_into(const HoleyCsr& h, CsrGraph& out, int threads) {
  const VertexId n = h.num_vertices();
  out.offsets = exclusive_scan(h.fill, threads);
  out.targets.resize(out.offsets.back());
  out.weights.resize(out.offsets.back());
  double arc_weight = 0.0;
#pragma omp parallel for schedule(dynamic, 1024) num_threads(threads) reduction(+ : arc_weight)
  for (std::int64_t v = 0; v < static_cast<std::int64_t>(n); ++v) {
    EdgeOffset to = out.offsets[v];
    const EdgeOffset lo = h.offsets[v];
    for (EdgeOffset a = lo; a < lo + h.fill[v]; ++a, ++to) {
      out.targets[to] = h.targets[a];
      out.weights[to] = h.weights[a];
      arc_weight += static_cast<double>(h.weights[a]);
    }
  }
  out.total_weight = arc_weight / 2.0;
}

}  // namespace louvain::detail
