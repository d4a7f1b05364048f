#include "louvain/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <stdexcept>
#include <vector>

#include "louvain/errors.hpp"

namespace louvain {

namespace {

double now_seconds(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Ordered-map neighbor scan; ascending key order doubles as the tie-break.
std::map<CommunityId, double> scan_map(const CsrGraph& g, const Membership& comm, VertexId u,
                                       bool include_self) {
  std::map<CommunityId, double> links;
  const auto targets = g.arc_targets(u);
  const auto weights = g.arc_weights(u);
  for (std::size_t k = 0; k < targets.size(); ++k) {
    if (!include_self && targets[k] == u) continue;
    links[comm[targets[k]]] += static_cast<double>(weights[k]);
  }
  return links;
}

CsrGraph aggregate_map(const CsrGraph& g, const Membership& comm, CommunityId count) {
  std::vector<std::map<CommunityId, double>> rows(count);
  for (VertexId u = 0; u < g.num_vertices(); ++u) {
    const auto targets = g.arc_targets(u);
    const auto weights = g.arc_weights(u);
    for (std::size_t k = 0; k < targets.size(); ++k)
      rows[comm[u]][comm[targets[k]]] += static_cast<double>(weights[k]);
  }
  CsrGraph out;
  out.offsets.resize(count + 1, 0);
  for (CommunityId c = 0; c < count; ++c) out.offsets[c + 1] = out.offsets[c] + rows[c].size();
  out.targets.reserve(out.offsets.back());
  out.weights.reserve(out.offsets.back());
  double arc_weight = 0.0;
  for (CommunityId c = 0; c < count; ++c) {
    for (const auto& [d, w] : rows[c]) {
      out.targets.push_back(d);
      const Weight narrowed = static_cast<Weight>(w);
      out.weights.push_back(narrowed);
      arc_weight += static_cast<double>(narrowed);
    }
  }
  out.total_weight = arc_weight / 2.0;
  return out;
}

}  // namespace

LouvainResult sequential_louvain(const CsrGraph& g, const LouvainParams& params) {
  const auto t_start = std::chrono::steady_clock::now();
  if (params.max_passes < 0 || params.max_iterations < 0 || !(params.tolerance_drop > 0.0) ||
      !(params.aggregation_tolerance > 0.0))
    throw std::invalid_argument("invalid parameters");
  if (!(g.total_weight > 0.0))
    throw DegenerateGraphError("cannot cluster a graph with zero total weight");

  const VertexId n = g.num_vertices();
  const double m = g.total_weight;

  LouvainResult result;
  Membership global(n);
  for (VertexId v = 0; v < n; ++v) global[v] = v;

  CsrGraph owned;  // current working graph, once aggregation replaces the input
  const CsrGraph* current = &g;
  double tolerance = params.initial_tolerance;
  double t_move = 0.0, t_aggregate = 0.0;

  for (int pass = 0; pass < params.max_passes; ++pass) {
    const auto t_pass = std::chrono::steady_clock::now();
    const VertexId nv = current->num_vertices();

    std::vector<double> vertex_w(nv, 0.0);
    for (VertexId v = 0; v < nv; ++v)
      for (const Weight w : current->arc_weights(v)) vertex_w[v] += static_cast<double>(w);
    std::vector<double> community_w = vertex_w;
    Membership local(nv);
    for (VertexId v = 0; v < nv; ++v) local[v] = v;
    std::vector<std::uint8_t> unprocessed(nv, 1);

    const auto t0 = std::chrono::steady_clock::now();
    int iterations = 0;
    for (int it = 0; it < params.max_iterations; ++it) {
      double gain_total = 0.0;
      for (VertexId u = 0; u < nv; ++u) {
        if (params.prune && !unprocessed[u]) continue;
        unprocessed[u] = 0;
        const std::map<CommunityId, double> links = scan_map(*current, local, u, false);
        const CommunityId from = local[u];
        const auto own_it = links.find(from);
        const double to_own = own_it == links.end() ? 0.0 : own_it->second;
        CommunityId best = from;
        double best_gain = 0.0;
        for (const auto& [c, w] : links) {
          if (c == from) continue;
          const double gain =
              delta_modularity(w, to_own, vertex_w[u], community_w[c], community_w[from], m);
          if (gain > best_gain) {  // ascending keys: first strict max has the lowest id
            best = c;
            best_gain = gain;
          }
        }
        if (best == from || best_gain <= 0.0) continue;
        community_w[from] -= vertex_w[u];
        community_w[best] += vertex_w[u];
        local[u] = best;
        gain_total += best_gain;
        if (params.prune)
          for (const VertexId t : current->arc_targets(u)) unprocessed[t] = 1;
      }
      ++iterations;
      if (gain_total <= tolerance) break;
    }
    t_move += now_seconds(t0);
    ++result.passes;
    result.iterations_per_pass.push_back(iterations);
    result.tolerance_per_pass.push_back(tolerance);

    const auto compose = [&] {
      for (VertexId v = 0; v < n; ++v) global[v] = local[global[v]];
    };

    if (iterations <= 1) {
      compose();
      result.pass_seconds.push_back(now_seconds(t_pass));
      break;
    }
    std::map<CommunityId, CommunityId> remap;
    for (const CommunityId c : local) remap.emplace(c, 0);
    if (static_cast<double>(remap.size()) / nv > params.aggregation_tolerance) {
      compose();
      result.pass_seconds.push_back(now_seconds(t_pass));
      break;
    }
    CommunityId next_id = 0;
    for (auto& [old_id, new_id] : remap) new_id = next_id++;  // ascending old ids
    for (CommunityId& c : local) c = remap[c];
    compose();

    const auto t1 = std::chrono::steady_clock::now();
    owned = aggregate_map(*current, local, next_id);
    t_aggregate += now_seconds(t1);
    current = &owned;
    ++result.aggregations;
    tolerance /= params.tolerance_drop;
    result.pass_seconds.push_back(now_seconds(t_pass));
  }

  std::map<CommunityId, CommunityId> remap;
  for (const CommunityId c : global) remap.emplace(c, 0);
  CommunityId next_id = 0;
  for (auto& [old_id, new_id] : remap) new_id = next_id++;
  for (CommunityId& c : global) c = remap[c];

  result.num_communities = next_id;
  result.membership = std::move(global);
  result.modularity = modularity(g, result.membership);
  result.wall_seconds = now_seconds(t_start);
  result.phase.local_moving = t_move;
  result.phase.aggregation = t_aggregate;
  result.phase.other = result.wall_seconds - t_move - t_aggregate;
  return result;
}

namespace {

void enumerate_partitions(VertexId i, CommunityId next_free, Membership& a, const CsrGraph& g,
                          BestPartition& best, bool& first) {
  const VertexId n = g.num_vertices();
  if (i == n) {
    const double q = modularity(g, a);
    if (first || q > best.modularity) {  // strict: ties keep the earliest string
      best.membership = a;
      best.modularity = q;
      first = false;
    }
    return;
  }
  for (CommunityId c = 0; c <= next_free; ++c) {
    a[i] = c;
    enumerate_partitions(i + 1, c == next_free ? next_free + 1 : next_free, a, g, best, first);
  }
}

}  // namespace

BestPartition exhaustive_best_partition(const CsrGraph& g) {
  const VertexId n = g.num_vertices();
  if (n == 0 || n > kExhaustiveLimit)
    throw std::invalid_argument("exhaustive search handles 1.." +
                                std::to_string(kExhaustiveLimit) + " vertices");
  if (!(g.total_weight > 0.0))
    throw DegenerateGraphError("modularity is undefined when the total edge weight is zero");

  BestPartition best;
  Membership a(n, 0);
  bool first = true;
  // a[0] is fixed at 0: restricted growth strings in lexicographic order.
  enumerate_partitions(1, 1, a, g, best, first);
  return best;
}

std::pair<double, double> check_delta(const CsrGraph& g, const Membership& membership, VertexId i,
                                      CommunityId target) {
  const CommunityId own = membership[i];
  if (target == own) return {0.0, 0.0};

  double to_target = 0.0, to_own = 0.0, k_i = 0.0;
  const auto targets = g.arc_targets(i);
  const auto weights = g.arc_weights(i);
  for (std::size_t k = 0; k < targets.size(); ++k) {
    const double w = static_cast<double>(weights[k]);
    k_i += w;
    if (targets[k] == i) continue;
    if (membership[targets[k]] == target) to_target += w;
    if (membership[targets[k]] == own) to_own += w;
  }

  const CommunityAggregates agg = community_aggregates(g, membership);
  const double sigma_c = target < agg.sigma_total.size() ? agg.sigma_total[target] : 0.0;
  const double sigma_d = agg.sigma_total[own];
  const double formula =
      delta_modularity(to_target, to_own, k_i, sigma_c, sigma_d, g.total_weight);

  Membership moved = membership;
  moved[i] = target;
  const double direct = modularity(g, moved) - modularity(g, membership);
  return {formula, direct};
}

}  // namespace louvain
