#pragma once

// Plumbing shared by the two parallel engines; not installed.

#include <chrono>
#include <vector>

#include "louvain/graph.hpp"
#include "louvain/louvain.hpp"
#include "louvain/quality.hpp"

namespace louvain::detail {

int resolve_threads(int requested);

// Rejects nonsensical values (negative budgets, non-positive divisors).
void validate_params(const LouvainParams& params);

void identity_membership(Membership& membership, VertexId n, int threads);

void vertex_weights_into(const CsrGraph& g, std::vector<double>& out, int threads);

// Vertex lists grouped by community: members of c are
// members[offsets[c]..offsets[c+1]).
struct CommunityCsr {
  std::vector<EdgeOffset> offsets;
  std::vector<VertexId> members;
};

void build_community_csr(const Membership& membership, CommunityId count, int threads,
                         CommunityCsr& out);

// Sum of member degrees per community; the row budget of the aggregated
// holey CSR.
void community_total_degrees(const CsrGraph& g, const Membership& membership, CommunityId count,
                             int threads, std::vector<EdgeOffset>& out);

// compact_holey writing into a caller-owned graph so pass buffers can be
// reused without reallocation.
void compact_holey_into(const HoleyCsr& h, CsrGraph& out, int threads);

inline std::chrono::steady_clock::time_point tick() { return std::chrono::steady_clock::now(); }

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace louvain::detail
