#pragma once

#include <cstddef>
#include <type_traits>
#include <vector>

#include <omp.h>

namespace louvain {

// out[i] = counts[0] + ... + counts[i-1], out[counts.size()] = grand total.
template <class T>
std::vector<T> exclusive_scan_sequential(const std::vector<T>& counts) {
  static_assert(std::is_integral_v<T>);
  std::vector<T> out(counts.size() + 1);
  T run = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    out[i] = run;
    run += counts[i];
  }
  out[counts.size()] = run;
  return out;
}

// Blocked two-phase scan. Integer addition is associative, so the result is
// bit-identical to the sequential scan for any thread count.
template <class T>
std::vector<T> exclusive_scan(const std::vector<T>& counts, int thread_count = 0) {
  static_assert(std::is_integral_v<T>);
  const std::size_t n = counts.size();
  const int want = thread_count > 0 ? thread_count : omp_get_max_threads();
  if (n < 4096 || want == 1) return exclusive_scan_sequential(counts);

  std::vector<T> out(n + 1);
  std::vector<T> partial;
#pragma omp parallel num_threads(want)
  {
    const int team = omp_get_num_threads();
    const int id = omp_get_thread_num();
#pragma omp single
    partial.assign(static_cast<std::size_t>(team) + 1, T{0});

    const std::size_t lo = n * static_cast<std::size_t>(id) / team;
    const std::size_t hi = n * (static_cast<std::size_t>(id) + 1) / team;
    T sum = 0;
    for (std::size_t i = lo; i < hi; ++i) sum += counts[i];
    partial[id] = sum;
#pragma omp barrier
#pragma omp single
    {
      T run = 0;
      for (int k = 0; k < team; ++k) {
        const T block = partial[k];
        partial[k] = run;
        run += block;
      }
      partial[team] = run;
    }
    T run = partial[id];
    for (std::size_t i = lo; i < hi; ++i) {
      out[i] = run;
      run += counts[i];
    }
#pragma omp single
    out[n] = partial[team];
  }
  return out;
}

}  // namespace louvain
