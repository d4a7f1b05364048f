// Probing-mode ablation for the flat scan tables: accumulate a fixed random
// key stream into a table sized for the worst-case distinct-key count.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "louvain/compact_hashtable.hpp"

namespace {

using namespace louvain;

void BM_hashtable_accumulate(benchmark::State& state) {
  const auto probing = static_cast<Probing>(state.range(0));
  const std::uint64_t degree = static_cast<std::uint64_t>(state.range(1));
  const std::uint64_t p1 = next_pow2(degree) - 1;

  std::vector<CommunityId> keys(p1, kEmptySlot);
  std::vector<double> values(p1, 0.0);
  const HashView<double> h = make_view(keys.data(), values.data(), p1);

  std::mt19937_64 rng(2024);
  std::vector<CommunityId> stream(degree);
  for (auto& k : stream) k = static_cast<CommunityId>(rng() % (degree * 4));

  for (auto _ : state) {
    hashtable_clear(h);
    for (const CommunityId k : stream) hashtable_accumulate(h, probing, k, 1.0, false);
    benchmark::DoNotOptimize(values.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * degree);
}

void probing_grid(benchmark::internal::Benchmark* b) {
  for (const Probing mode : {Probing::linear, Probing::quadratic, Probing::double_hash,
                             Probing::quadratic_double})
    for (const int degree : {16, 256, 4096})
      b->Args({static_cast<int>(mode), degree});
}
BENCHMARK(BM_hashtable_accumulate)->Apply(probing_grid);

}  // namespace
