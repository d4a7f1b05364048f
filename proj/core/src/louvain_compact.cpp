#include "louvain/louvain_compact.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <tuple>
#include <utility>

#include <omp.h>

#include "engine_detail.hpp"
#include "louvain/errors.hpp"
#include "louvain/louvain_mc.hpp"  // renumber_communities, lookup_dendrogram
#include "louvain/prefix_sum.hpp"

namespace louvain {

namespace {

void validate_options(const CompactOptions& opt) {
  if (opt.pick_less.period < 2 || opt.pick_less.period % 2 != 0)
    throw std::invalid_argument("pick-less period must be even and >= 2");
  if (opt.value_bits != 32 && opt.value_bits != 64)
    throw std::invalid_argument("value_bits must be 32 or 64");
}

template <class V>
HashView<V> vertex_view(CompactSlabs<V>& slabs, const CsrGraph& g, VertexId u) {
  const EdgeOffset off = g.offsets[u];
  const EdgeOffset deg = g.offsets[u + 1] - off;
  return make_view(slabs.keys.data() + 2 * off, slabs.values.data() + 2 * off,
                   next_pow2(deg) - 1);
}

template <class V>
bool scan_serial(const HashView<V>& h, Probing probing, const CsrGraph& g, const Membership& comm,
                 VertexId u, bool include_self) {
  hashtable_clear(h);
  const auto targets = g.arc_targets(u);
  const auto weights = g.arc_weights(u);
  for (std::size_t k = 0; k < targets.size(); ++k) {
    if (!include_self && targets[k] == u) continue;
    if (!hashtable_accumulate(h, probing, comm[targets[k]], static_cast<V>(weights[k]), false))
      return false;
  }
  return true;
}

// Turns the scanned weights into move gains in place, then picks the best
// slot. The entry for u's own community turns negative (-k^2/(2m^2)), so it
// can never shadow a genuine candidate.
template <class V>
std::pair<CommunityId, double> decide_serial(const HashView<V>& h, Probing probing,
                                             const std::vector<double>& vertex_w,
                                             const std::vector<double>& community_w, double m,
                                             VertexId u, CommunityId from) {
  const double own = static_cast<double>(hashtable_get(h, probing, from));
  for (std::uint64_t s = 0; s < h.p1; ++s) {
    if (h.keys[s] == kEmptySlot) continue;
    h.values[s] = static_cast<V>(delta_modularity(static_cast<double>(h.values[s]), own,
                                                  vertex_w[u], community_w[h.keys[s]],
                                                  community_w[from], m));
  }
  const auto [to, gain] = hashtable_max(h);
  return {to, static_cast<double>(gain)};
}

struct TeamDecision {
  double own = 0.0;
  CommunityId to = kEmptySlot;
  double gain = 0.0;
};

// Team-path counterpart of scan_serial + decide_serial. Must be called from
// inside an active parallel region by every worker, all with the same u; the
// single/for constructs carry the barriers that order clear, scan, transform
// and max.
template <class V>
void team_evaluate(const CsrGraph& g, const Membership& comm, const std::vector<double>& vertex_w,
                   const std::vector<double>& community_w, double m, VertexId u, CommunityId from,
                   const HashView<V>& h, Probing probing, TeamDecision& decision,
                   std::atomic<bool>& fatal) {
  const std::int64_t lo = static_cast<std::int64_t>(g.offsets[u]);
  const std::int64_t hi = static_cast<std::int64_t>(g.offsets[u + 1]);
#pragma omp for schedule(static)
  for (std::int64_t s = 0; s < static_cast<std::int64_t>(h.p1); ++s) {
    h.keys[s] = kEmptySlot;
    h.values[s] = V{0};
  }
#pragma omp for schedule(static)
  for (std::int64_t a = lo; a < hi; ++a) {
    const VertexId t = g.targets[a];
    if (t == u) continue;
    if (!hashtable_accumulate(h, probing, comm[t], static_cast<V>(g.weights[a]), true))
      fatal.store(true, std::memory_order_relaxed);
  }
#pragma omp single
  decision.own = static_cast<double>(hashtable_get(h, probing, from));
#pragma omp for schedule(static)
  for (std::int64_t s = 0; s < static_cast<std::int64_t>(h.p1); ++s) {
    if (h.keys[s] == kEmptySlot) continue;
    h.values[s] = static_cast<V>(delta_modularity(static_cast<double>(h.values[s]), decision.own,
                                                  vertex_w[u], community_w[h.keys[s]],
                                                  community_w[from], m));
  }
#pragma omp single
  {
    const auto [to, gain] = hashtable_max(h);
    decision.to = to;
    decision.gain = static_cast<double>(gain);
  }
}

template <class V>
int compact_move(const CsrGraph& g, Membership& comm, const std::vector<double>& vertex_w,
                 std::vector<double>& community_w, std::vector<std::uint8_t>& unprocessed,
                 double m, double tolerance, const LouvainParams& params,
                 const CompactOptions& opt, CompactSlabs<V>& slabs,
                 std::vector<VertexId>& team_list) {
  const std::int64_t n = g.num_vertices();
  const int threads = detail::resolve_threads(params.thread_count);
  const int chunk = params.chunk_size;
  std::atomic<bool> fatal{false};

  int performed = 0;
  for (int iteration = 0; iteration < params.max_iterations; ++iteration) {
    const bool pickless = pick_less_active(iteration, opt.pick_less.period);
    double gain_total = 0.0;

    // Low-degree sweep: one vertex per worker, plain writes into its slab.
#pragma omp parallel for schedule(dynamic, chunk) num_threads(threads) reduction(+ : gain_total)
    for (std::int64_t vi = 0; vi < n; ++vi) {
      const VertexId u = static_cast<VertexId>(vi);
      if (params.prune && !unprocessed[u]) continue;
      const EdgeOffset deg = g.degree(u);
      if (deg == 0) {
        unprocessed[u] = 0;
        continue;
      }
      if (deg >= opt.switch_degrees.move) continue;  // the team sweep takes it
      unprocessed[u] = 0;
      const HashView<V> h = vertex_view(slabs, g, u);
      if (!scan_serial(h, opt.probing, g, comm, u, false)) {
        fatal.store(true, std::memory_order_relaxed);
        continue;
      }
      const CommunityId from = comm[u];
      const auto [to, gain] = decide_serial(h, opt.probing, vertex_w, community_w, m, u, from);
      if (to == kEmptySlot || to == from || gain <= 0.0) continue;
      if (pickless && to > from) continue;
      const double ku = vertex_w[u];
#pragma omp atomic
      community_w[from] -= ku;
#pragma omp atomic
      community_w[to] += ku;
      comm[u] = to;
      gain_total += gain;
      if (params.prune)
        for (const VertexId t : g.arc_targets(u)) unprocessed[t] = 1;
    }

    // High-degree sweep: the whole team cooperates on one vertex at a time.
    team_list.clear();
    for (std::int64_t vi = 0; vi < n; ++vi) {
      const VertexId u = static_cast<VertexId>(vi);
      if (params.prune && !unprocessed[u]) continue;
      if (g.degree(u) >= opt.switch_degrees.move) team_list.push_back(u);
    }
    if (!team_list.empty()) {
      TeamDecision decision;
      double team_gain = 0.0;
      bool moved = false;
#pragma omp parallel num_threads(threads)
      for (std::size_t idx = 0; idx < team_list.size(); ++idx) {
        const VertexId u = team_list[idx];
        const CommunityId from = comm[u];
        const HashView<V> h = vertex_view(slabs, g, u);
        team_evaluate(g, comm, vertex_w, community_w, m, u, from, h, opt.probing, decision,
                      fatal);
#pragma omp single
        {
          unprocessed[u] = 0;
          moved = false;
          if (decision.to != kEmptySlot && decision.to != from && decision.gain > 0.0 &&
              !(pickless && decision.to > from)) {
            community_w[from] -= vertex_w[u];
            community_w[decision.to] += vertex_w[u];
            comm[u] = decision.to;
            team_gain += decision.gain;
            moved = true;
          }
        }
        // the single's barrier publishes `moved`, and it is uniform across
        // the team, so the worksharing loop below is entered by all or none
        if (moved && params.prune) {
#pragma omp for schedule(static)
          for (std::int64_t a = static_cast<std::int64_t>(g.offsets[u]);
               a < static_cast<std::int64_t>(g.offsets[u + 1]); ++a)
            unprocessed[g.targets[a]] = 1;
        }
      }
      gain_total += team_gain;
    }

    ++performed;
    if (fatal.load()) throw InternalError("scan table exhausted; capacity invariant violated");
    if (gain_total <= tolerance) break;
  }
  return performed;
}

template <class V>
void compact_aggregate_into(const CsrGraph& g, const Membership& comm, CommunityId count,
                            const LouvainParams& params, const CompactOptions& opt,
                            CompactSlabs<V>& slabs, HoleyCsr& holey, CsrGraph& out) {
  const int threads = detail::resolve_threads(params.thread_count);
  const int chunk = params.chunk_size;

  detail::CommunityCsr comms;
  detail::build_community_csr(comm, count, threads, comms);
  std::vector<EdgeOffset> degrees;
  detail::community_total_degrees(g, comm, count, threads, degrees);
  holey.offsets = exclusive_scan(degrees, threads);
  holey.targets.resize(holey.offsets.back());
  holey.weights.resize(holey.offsets.back());
  holey.fill.assign(count, 0);
  std::atomic<bool> fatal{false};

  // Community tables are sized by total member degree and live at twice the
  // holey row offset, mirroring the per-vertex layout.
  // Low-degree communities: serial scan per worker.
#pragma omp parallel for schedule(dynamic, chunk) num_threads(threads)
  for (std::int64_t ci = 0; ci < static_cast<std::int64_t>(count); ++ci) {
    const CommunityId c = static_cast<CommunityId>(ci);
    const EdgeOffset base = holey.offsets[c];
    const EdgeOffset span = holey.offsets[c + 1] - base;
    if (span == 0 || span >= opt.switch_degrees.aggregate) continue;
    const HashView<V> h =
        make_view(slabs.keys.data() + 2 * base, slabs.values.data() + 2 * base,
                  next_pow2(span) - 1);
    hashtable_clear(h);
    bool ok = true;
    for (EdgeOffset k = comms.offsets[c]; ok && k < comms.offsets[c + 1]; ++k) {
      const VertexId i = comms.members[k];
      const auto targets = g.arc_targets(i);
      const auto weights = g.arc_weights(i);
      for (std::size_t x = 0; ok && x < targets.size(); ++x)
        ok = hashtable_accumulate(h, opt.probing, comm[targets[x]],
                                  static_cast<V>(weights[x]), false);
    }
    if (!ok) {
      fatal.store(true, std::memory_order_relaxed);
      continue;
    }
    for (std::uint64_t s = 0; s < h.p1; ++s) {
      if (h.keys[s] == kEmptySlot) continue;
      EdgeOffset slot;
#pragma omp atomic capture
      slot = holey.fill[c]++;
      holey.targets[base + slot] = h.keys[s];
      holey.weights[base + slot] = static_cast<Weight>(h.values[s]);
    }
  }

  // High-degree communities: team per community, shared accumulate.
  std::vector<CommunityId> big;
  for (CommunityId c = 0; c < count; ++c)
    if (holey.offsets[c + 1] - holey.offsets[c] >= opt.switch_degrees.aggregate)
      big.push_back(c);
  if (!big.empty()) {
#pragma omp parallel num_threads(threads)
    for (const CommunityId c : big) {
      const EdgeOffset base = holey.offsets[c];
      const EdgeOffset span = holey.offsets[c + 1] - base;
      const HashView<V> h =
          make_view(slabs.keys.data() + 2 * base, slabs.values.data() + 2 * base,
                    next_pow2(span) - 1);
#pragma omp for schedule(static)
      for (std::int64_t s = 0; s < static_cast<std::int64_t>(h.p1); ++s) {
        h.keys[s] = kEmptySlot;
        h.values[s] = V{0};
      }
#pragma omp for schedule(dynamic, 1)
      for (std::int64_t k = static_cast<std::int64_t>(comms.offsets[c]);
           k < static_cast<std::int64_t>(comms.offsets[c + 1]); ++k) {
        const VertexId i = comms.members[k];
        const auto targets = g.arc_targets(i);
        const auto weights = g.arc_weights(i);
        for (std::size_t x = 0; x < targets.size(); ++x)
          if (!hashtable_accumulate(h, opt.probing, comm[targets[x]],
                                    static_cast<V>(weights[x]), true))
            fatal.store(true, std::memory_order_relaxed);
      }
#pragma omp for schedule(static)
      for (std::int64_t s = 0; s < static_cast<std::int64_t>(h.p1); ++s) {
        if (h.keys[s] == kEmptySlot) continue;
        EdgeOffset slot;
#pragma omp atomic capture
        slot = holey.fill[c]++;
        holey.targets[base + slot] = h.keys[s];
        holey.weights[base + slot] = static_cast<Weight>(h.values[s]);
      }
    }
  }

  if (fatal.load()) throw InternalError("aggregation table exhausted; capacity invariant violated");
  detail::compact_holey_into(holey, out, threads);
}

template <class V>
LouvainResult compact_impl(const CsrGraph& g, const LouvainParams& params,
                           const CompactOptions& opt) {
  const auto t_start = detail::tick();
  detail::validate_params(params);
  validate_options(opt);
  if (!(g.total_weight > 0.0))
    throw DegenerateGraphError("cannot cluster a graph with zero total weight");

  const VertexId n = g.num_vertices();
  const int threads = detail::resolve_threads(params.thread_count);
  const double m = g.total_weight;

  LouvainResult result;
  Membership global;
  detail::identity_membership(global, n, threads);

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
  CompactSlabs<V> slabs(g.num_arcs());
  std::vector<VertexId> team_list;

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
    const int iterations = compact_move(*current, local, vertex_w, community_w, unprocessed, m,
                                        tolerance, params, opt, slabs, team_list);
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
    compact_aggregate_into(*current, local, count, params, opt, slabs, holey, next);
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

}  // namespace

LouvainResult louvain_compact(const CsrGraph& g, const LouvainParams& params,
                              const CompactOptions& options) {
  validate_options(options);
  if (options.value_bits == 64) return compact_impl<double>(g, params, options);
  return compact_impl<float>(g, params, options);
}

template <class V>
std::pair<CommunityId, double> compact_evaluate_move(const CsrGraph& g,
                                                     const Membership& membership,
                                                     const std::vector<double>& vertex_w,
                                                     const std::vector<double>& community_w,
                                                     double m, VertexId u,
                                                     const CompactOptions& options,
                                                     CompactSlabs<V>& slabs) {
  validate_options(options);
  const CommunityId from = membership[u];
  const EdgeOffset deg = g.degree(u);
  if (deg == 0) return {from, 0.0};
  const HashView<V> h = vertex_view(slabs, g, u);

  CommunityId to = kEmptySlot;
  double gain = 0.0;
  if (deg < options.switch_degrees.move) {
    if (!scan_serial(h, options.probing, g, membership, u, false))
      throw InternalError("scan table exhausted; capacity invariant violated");
    std::tie(to, gain) = decide_serial(h, options.probing, vertex_w, community_w, m, u, from);
  } else {
    TeamDecision decision;
    std::atomic<bool> fatal{false};
#pragma omp parallel
    team_evaluate(g, membership, vertex_w, community_w, m, u, from, h, options.probing, decision,
                  fatal);
    if (fatal.load()) throw InternalError("scan table exhausted; capacity invariant violated");
    to = decision.to;
    gain = decision.gain;
  }
  if (to == kEmptySlot || to == from || gain <= 0.0) return {from, 0.0};
  return {to, gain};
}

template std::pair<CommunityId, double> compact_evaluate_move<float>(
    const CsrGraph&, const Membership&, const std::vector<double>&, const std::vector<double>&,
    double, VertexId, const CompactOptions&, CompactSlabs<float>&);
template std::pair<CommunityId, double> compact_evaluate_move<double>(
    const CsrGraph&, const Membership&, const std::vector<double>&, const std::vector<double>&,
    double, VertexId, const CompactOptions&, CompactSlabs<double>&);

CsrGraph compact_aggregate(const CsrGraph& g, const Membership& membership,
                           const LouvainParams& params, const CompactOptions& options) {
  validate_options(options);
  if (membership.size() != g.num_vertices())
    throw std::invalid_argument("membership size must match the vertex count");
  CommunityId count = 0;
  for (const CommunityId c : membership) count = std::max(count, c);
  if (!membership.empty()) ++count;
  if (count != count_communities(membership))
    throw std::invalid_argument("membership ids must be contiguous");

  HoleyCsr holey;
  CsrGraph out;
  if (options.value_bits == 64) {
    CompactSlabs<double> slabs(g.num_arcs());
    compact_aggregate_into(g, membership, count, params, options, slabs, holey, out);
  } else {
    CompactSlabs<float> slabs(g.num_arcs());
    compact_aggregate_into(g, membership, count, params, options, slabs, holey, out);
  }
  return out;
}

}  // namespace louvain
