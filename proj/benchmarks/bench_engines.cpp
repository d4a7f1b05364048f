// End-to-end engine benchmarks on planted-partition graphs, plus the two
// phase primitives (community scan and aggregation) in isolation.

#include <benchmark/benchmark.h>

#include <vector>

#include "louvain/graph.hpp"
#include "louvain/louvain_compact.hpp"
#include "louvain/louvain_mc.hpp"
#include "louvain/oracle.hpp"
#include "louvain/synthetic.hpp"

namespace {

using namespace louvain;

CsrGraph planted_graph(int vertices) {
  return build_csr(planted_partition(vertices, 10, 0.2, 2.0 / vertices, 42), true);
}

LouvainParams bench_params(int threads) {
  LouvainParams p;
  p.thread_count = threads;
  return p;
}

void report_rate(benchmark::State& state, const CsrGraph& g) {
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * (g.num_arcs() / 2));
  state.counters["edges"] = static_cast<double>(g.num_arcs() / 2);
}

void BM_engine_sequential(benchmark::State& state) {
  const CsrGraph g = planted_graph(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sequential_louvain(g, bench_params(1)));
  report_rate(state, g);
}
BENCHMARK(BM_engine_sequential)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_engine_mc(benchmark::State& state) {
  const CsrGraph g = planted_graph(static_cast<int>(state.range(0)));
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(louvain_mc(g, bench_params(threads)));
  report_rate(state, g);
}
BENCHMARK(BM_engine_mc)
    ->Args({1000, 1})
    ->Args({10000, 1})
    ->Args({10000, 2})
    ->Args({10000, 4})
    ->Unit(benchmark::kMillisecond);

void BM_engine_compact(benchmark::State& state) {
  const CsrGraph g = planted_graph(static_cast<int>(state.range(0)));
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(louvain_compact(g, bench_params(threads)));
  report_rate(state, g);
}
BENCHMARK(BM_engine_compact)
    ->Args({1000, 1})
    ->Args({10000, 1})
    ->Args({10000, 4})
    ->Unit(benchmark::kMillisecond);

// Value width ablation: 32-bit scan-table values halve the slab footprint,
// 64-bit ones skip the float rounding on accumulation.
void BM_engine_compact_value_bits(benchmark::State& state) {
  const CsrGraph g = planted_graph(10000);
  CompactOptions opt;
  opt.value_bits = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(louvain_compact(g, bench_params(1), opt));
  report_rate(state, g);
}
BENCHMARK(BM_engine_compact_value_bits)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_scan_communities(benchmark::State& state) {
  const CsrGraph g = planted_graph(10000);
  const Membership memb = random_membership(g.num_vertices(), g.num_vertices() / 10, 7);
  FarKvScratch scratch(g.num_vertices());
  VertexId v = 0;
  for (auto _ : state) {
    scratch.clear();
    scan_communities(scratch, g, memb, v, false);
    benchmark::DoNotOptimize(scratch);
    v = (v + 1) % g.num_vertices();
  }
}
BENCHMARK(BM_scan_communities);

void BM_aggregate(benchmark::State& state) {
  const CsrGraph g = planted_graph(10000);
  Membership memb = random_membership(g.num_vertices(), g.num_vertices() / 20, 11);
  renumber_communities(memb);
  const bool compact_path = state.range(0) != 0;
  LouvainParams params = bench_params(1);
  for (auto _ : state) {
    if (compact_path)
      benchmark::DoNotOptimize(compact_aggregate(g, memb, params));
    else
      benchmark::DoNotOptimize(louvain_aggregate(g, memb, params));
  }
  report_rate(state, g);
}
BENCHMARK(BM_aggregate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
