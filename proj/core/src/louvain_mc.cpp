#include "louvain/louvain_mc.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <utility>

#include <omp.h>

#include "engine_detail.hpp"
#include "louvain/errors.hpp"
#include "louvain/prefix_sum.hpp"

namespace louvain {

int louvain_move(const CsrGraph& g, Membership& membership, const std::vector<double>& vertex_w,
                 std::vector<double>& community_w, std::vector<std::uint8_t>& unprocessed,
                 double m, double tolerance, const LouvainParams& params,
                 std::vector<std::unique_ptr<FarKvScratch>>& scratch) {
  const std::int64_t n = g.num_vertices();
  const int threads = detail::resolve_threads(params.thread_count);
  const int chunk = params.chunk_size;
  if (scratch.size() < static_cast<std::size_t>(threads))
    throw InternalError("one scan scratch per worker is required");

  int performed = 0;
  for (int iteration = 0; iteration < params.max_iterations; ++iteration) {
    double gain_total = 0.0;
#pragma omp parallel for schedule(dynamic, chunk) num_threads(threads) reduction(+ : gain_total)
    for (std::int64_t vi = 0; vi < n; ++vi) {
      const VertexId u = static_cast<VertexId>(vi);
      if (params.prune) {
        if (!unprocessed[u]) continue;
        unprocessed[u] = 0;
      }
      FarKvScratch& h = *scratch[static_cast<std::size_t>(omp_get_thread_num())];
      h.clear();
      scan_communities(h, g, membership, u, false);
      const CommunityId from = membership[u];
      const auto [to, gain] = best_community(h, u, from, vertex_w, community_w, m);
      if (to == from || gain <= 0.0) continue;
      const double ku = vertex_w[u];
#pragma omp atomic
      community_w[from] -= ku;
#pragma omp atomic
      community_w[to] += ku;
      membership[u] = to;
      gain_total += gain;
      if (params.prune)
        for (const VertexId t : g.arc_targets(u)) unprocessed[t] = 1;
    }
    ++performed;
    if (gain_total <= tolerance) break;
  }
  return performed;
}

namespace {

// Rebuilds the graph on the communities of `membership` (contiguous ids,
// `count` of them) into `out`, reusing the holey buffer and one scan scratch
// per worker.
void aggregate_into(const CsrGraph& g, const Membership& membership, CommunityId count,
                    const LouvainParams& params,
                    std::vector<std::unique_ptr<FarKvScratch>>& scratch, HoleyCsr& holey,
                    CsrGraph& out) {
  const int threads = detail::resolve_threads(params.thread_count);
  const int chunk = params.chunk_size;

  detail::CommunityCsr comms;
  detail::build_community_csr(membership, count, threads, comms);

  std::vector<EdgeOffset> degrees;
  detail::community_total_degrees(g, membership, count, threads, degrees);
  holey.offsets = exclusive_scan(degrees, threads);
  holey.targets.resize(holey.offsets.back());
  holey.weights.resize(holey.offsets.back());
  holey.fill.assign(count, 0);

#pragma omp parallel for schedule(dynamic, chunk) num_threads(threads)
  for (std::int64_t ci = 0; ci < static_cast<std::int64_t>(count); ++ci) {
    const CommunityId c = static_cast<CommunityId>(ci);
    FarKvScratch& h = *scratch[static_cast<std::size_t>(omp_get_thread_num())];
    h.clear();
    for (EdgeOffset k = comms.offsets[c]; k < comms.offsets[c + 1]; ++k)
      scan_communities(h, g, membership, comms.members[k], true);
    const EdgeOffset base = holey.offsets[c];
    for (const CommunityId d : h.keys()) {
      EdgeOffset slot;
#pragma omp atomic capture
      slot = holey.fill[c]++;
      holey.targets[base + slot] = d;
      holey.weights[base + slot] = static_cast<Weight>(h.value(d));
    }
  }

  detail::compact_holey_into(holey, out, threads);
}

}  // namespace

CsrGraph louvain_aggregate(const CsrGraph& g, const Membership& membership,
                           const LouvainParams& params) {
  if (membership.size() != g.num_vertices())
    throw std::invalid_argument("membership size must match the vertex count");
  CommunityId count = 0;
  for (const CommunityId c : membership) count = std::max(count, c);
  if (!membership.empty()) ++count;
  if (count != count_communities(membership))
    throw std::invalid_argument("membership ids must be contiguous");

  const int threads = detail::resolve_threads(params.thread_count);
  std::vector<std::unique_ptr<FarKvScratch>> scratch;
  scratch.reserve(threads);
  for (int t = 0; t < threads; ++t)
    scratch.push_back(std::make_unique<FarKvScratch>(g.num_vertices()));
  HoleyCsr holey;
  CsrGraph out;
  aggregate_into(g, membership, count, params, scratch, holey, out);
  return out;
}

CommunityId renumber_communities(Membership& membership, int thread_count) {
  if (membership.empty()) return 0;
  const int threads = detail::resolve_threads(thread_count);
  const std::int64_t n = static_cast<std::int64_t>(membership.size());

  CommunityId max_id = 0;
#pragma omp parallel for schedule(static) num_threads(threads) reduction(max : max_id)
  for (std::int64_t i = 0; i < n; ++i) max_id = std::max(max_id, membership[i]);

  std::vector<CommunityId> used(static_cast<std::size_t>(max_id) + 1, 0);
#pragma omp parallel for schedule(static) num_threads(threads)
  for (std::int64_t i = 0; i < n; ++i) used[membership[i]] = 1;

  // Ranks assign new ids in ascending old-id order.
  const std::vector<CommunityId> rank = exclusive_scan(used, threads);
#pragma omp parallel for schedule(static) num_threads(threads)
  for (std::int64_t i = 0; i < n; ++i) membership[i] = rank[membership[i]];
  return rank.back();
}

void lookup_dendrogram(Membership& membership, const Membership& level, int thread_count) {
  const int threads = detail::resolve_threads(thread_count);
  const std::int64_t n = static_cast<std::int64_t>(membership.size());
  std::atomic<bool> out_of_range{false};
#pragma omp parallel for schedule(static) num_threads(threads)
  for (std::int64_t i = 0; i < n; ++i) {
    const CommunityId c = membership[i];
    if (c >= level.size()) {
      out_of_range.store(true, std::memory_order_relaxed);
      continue;
    }
    membership[i] = level[c];
  }
  if (out_of_range.load())
    throw InternalError("dendrogram lookup index out of range");
}

LouvainResult louvain_mc(const CsrGraph& g, const LouvainParams& params) {
  const auto t_start = detail::tick();
  detail::validate_params(params);
  if (!(g.total_weight > 0.0))
    throw DegenerateGraphError("cannot cluster a graph with zero total weight");

  const VertexId n = g.num_vertices();
  const int threads = detail::resolve_threads(params.thread_count);
  const double m = g.total_weight;

  LouvainResult result;
  Membership global;
  detail::identity_membership(global, n, threads);

  // Pass working set, allocated once at input size; aggregated graphs only
  // shrink, so later passes reuse the same storage.
  std::array<CsrGraph, 2> buffers;
  for (CsrGraph& b : buffers) {
    b.offsets.reserve(static_cast<std::size_t>(n) + 1);
    b.targets.reserve(g.num_arcs());
    b.weights.reserve(g.num_arcs());
  }
  HoleyCsr holey;
  holey.offsets.reserve(static_cast<std::size_t>(n) + 1);
  holey.targets.reserve(g.num_arcs());
  holey.weights.reserve(g.num_arcs());
  holey.fill.reserve(n);
  std::vector<std::unique_ptr<FarKvScratch>> scratch;
  scratch.reserve(threads);
  for (int t = 0; t < threads; ++t) scratch.push_back(std::make_unique<FarKvScratch>(n));

  Membership local;
  std::vector<double> vertex_w, community_w;
  std::vector<std::uint8_t> unprocessed;
  local.reserve(n);
  vertex_w.reserve(n);
  community_w.reserve(n);

  const CsrGraph* current = &g;
  double tolerance = params.initial_tolerance;
  double t_move = 0.0, t_aggregate = 0.0;

  for (int pass = 0; pass < params.max_passes; ++pass) {
    const auto t_pass = detail::tick();
    const VertexId nv = current->num_vertices();
    detail::vertex_weights_into(*current, vertex_w, threads);
    community_w = vertex_w;
    detail::identity_membership(local, nv, threads);
    unprocessed.assign(nv, 1);

    const auto t0 = detail::tick();
    const int iterations = louvain_move(*current, local, vertex_w, community_w, unprocessed, m,
                                        tolerance, params, scratch);
    t_move += detail::seconds_since(t0);
    ++result.passes;
    result.iterations_per_pass.push_back(iterations);
    result.tolerance_per_pass.push_back(tolerance);

    if (iterations <= 1) {  // no effective movement: globally converged
      lookup_dendrogram(global, local, threads);
      result.pass_seconds.push_back(detail::seconds_since(t_pass));
      break;
    }
    const CommunityId count = count_communities(local);
    if (static_cast<double>(count) / nv > params.aggregation_tolerance) {  // low shrink
      lookup_dendrogram(global, local, threads);
      result.pass_seconds.push_back(detail::seconds_since(t_pass));
      break;
    }

    renumber_communities(local, threads);
    lookup_dendrogram(global, local, threads);
    const auto t1 = detail::tick();
    CsrGraph& next = buffers[pass & 1];
    aggregate_into(*current, local, count, params, scratch, holey, next);
    t_aggregate += detail::seconds_since(t1);
    current = &next;
    ++result.aggregations;
    tolerance /= params.tolerance_drop;
    result.pass_seconds.push_back(detail::seconds_since(t_pass));
  }

  result.num_communities = renumber_communities(global, threads);
  result.membership = std::move(global);
  result.modularity = modularity(g, result.membership);
  result.wall_seconds = detail::seconds_since(t_start);
  result.phase.local_moving = t_move;
  result.phase.aggregation = t_aggregate;
  result.phase.other = result.wall_seconds - t_move - t_aggregate;
  return result;
}

}  // namespace louvain
