#pragma once

#include <atomic>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <utility>

#include "louvain/graph.hpp"

namespace louvain {

enum class Probing {
  linear,            // stride 1
  quadratic,         // stride doubles after each collision
  double_hash,       // constant stride key mod p2
  quadratic_double,  // stride <- 2*stride + (key mod p2)
};

// Smallest power of two strictly greater than x, so next_pow2(4) == 8.
inline std::uint64_t next_pow2(std::uint64_t x) {
  if (x >= (std::uint64_t{1} << 63)) throw std::overflow_error("next_pow2 overflow");
  return std::bit_ceil(x + 1);
}

inline constexpr CommunityId kEmptySlot = kInvalidVertex;

// Fixed-capacity open-addressing table over caller-provided slab memory.
// p1 is the slot count, chosen as next_pow2(degree) - 1, a Mersenne number;
// p2 = 2*p1 + 1 is the next Mersenne number, and consecutive Mersenne
// numbers are coprime.
template <class V>
struct HashView {
  CommunityId* keys = nullptr;
  V* values = nullptr;
  std::uint64_t p1 = 0;
  std::uint64_t p2 = 0;
};

template <class V>
inline HashView<V> make_view(CommunityId* keys, V* values, std::uint64_t capacity) {
  return {keys, values, capacity, 2 * capacity + 1};
}

template <class V>
inline void hashtable_clear(const HashView<V>& h) {
  for (std::uint64_t s = 0; s < h.p1; ++s) {
    h.keys[s] = kEmptySlot;
    h.values[s] = V{0};
  }
}

// One probe step. The first 2*p1 attempts follow the configured mode; the
// final p1 attempts sweep linearly from wherever the walk is, visiting every
// slot, so a free or matching slot is always reached when one exists. The
// sweep matters: every mode except linear has keys whose stride recurrence
// collapses mod a Mersenne p1 (any key with key mod p2 divisible by p1
// revisits only log2(p1+1) slots), and those keys would exhaust the budget
// with the table nowhere near full.
inline void probe_advance(Probing probing, std::uint64_t attempt, std::uint64_t p1,
                          std::uint64_t kmod, std::uint64_t& i, std::uint64_t& stride) {
  if (attempt + 1 >= 2 * p1) {
    i += 1;
    return;
  }
  switch (probing) {
    case Probing::linear:
      i += 1;
      break;
    case Probing::quadratic:
      i += stride;
      stride *= 2;
      break;
    case Probing::double_hash:
      i += kmod ? kmod : 1;  // a zero stride would probe one slot forever
      break;
    case Probing::quadratic_double:
      i += stride;
      stride = 2 * stride + kmod;
      break;
  }
}

// Adds `value` to the entry for `key`, claiming an empty slot if needed.
// The shared path claims with a compare-and-swap and accumulates atomically;
// the non-shared path uses plain reads and writes. Gives up after 3*p1
// probes; the closing linear sweep makes exhaustion equivalent to "no free
// slot left", so under the capacity invariant (distinct keys <= p1, with a
// new key only arriving while distinct keys < p1) it is a bug, not an input
// condition.
template <class V>
inline bool hashtable_accumulate(const HashView<V>& h, Probing probing, CommunityId key, V value,
                                 bool shared) {
  std::uint64_t i = key;
  std::uint64_t stride = 1;
  const std::uint64_t kmod = key % h.p2;
  const std::uint64_t retries = 3 * h.p1;
  for (std::uint64_t attempt = 0; attempt < retries; ++attempt) {
    const std::uint64_t s = i % h.p1;
    if (shared) {
      CommunityId seen = kEmptySlot;
      std::atomic_ref<CommunityId>(h.keys[s]).compare_exchange_strong(seen, key);
      // seen is the pre-swap key: empty means we claimed the slot.
      if (seen == kEmptySlot || seen == key) {
        std::atomic_ref<V>(h.values[s]).fetch_add(value, std::memory_order_relaxed);
        return true;
      }
    } else {
      if (h.keys[s] == key) {
        h.values[s] += value;
        return true;
      }
      if (h.keys[s] == kEmptySlot) {
        h.keys[s] = key;
        h.values[s] += value;
        return true;
      }
    }
    probe_advance(probing, attempt, h.p1, kmod, i, stride);
  }
  return false;
}

// Probe lookup; 0 when the key is absent. Walks the same sequence as
// hashtable_accumulate, so stopping at the first empty slot is sound.
template <class V>
inline V hashtable_get(const HashView<V>& h, Probing probing, CommunityId key) {
  std::uint64_t i = key;
  std::uint64_t stride = 1;
  const std::uint64_t kmod = key % h.p2;
  const std::uint64_t retries = 3 * h.p1;
  for (std::uint64_t attempt = 0; attempt < retries; ++attempt) {
    const std::uint64_t s = i % h.p1;
    if (h.keys[s] == key) return h.values[s];
    if (h.keys[s] == kEmptySlot) return V{0};
    probe_advance(probing, attempt, h.p1, kmod, i, stride);
  }
  return V{0};
}

// Live entry with the greatest value, ties to the lowest key; (kEmptySlot, 0)
// when the table is empty.
template <class V>
inline std::pair<CommunityId, V> hashtable_max(const HashView<V>& h) {
  CommunityId best_key = kEmptySlot;
  V best_value{0};
  bool any = false;
  for (std::uint64_t s = 0; s < h.p1; ++s) {
    const CommunityId k = h.keys[s];
    if (k == kEmptySlot) continue;
    const V v = h.values[s];
    if (!any || v > best_value || (v == best_value && k < best_key)) {
      any = true;
      best_key = k;
      best_value = v;
    }
  }
  return {best_key, any ? best_value : V{0}};
}

}  // namespace louvain
