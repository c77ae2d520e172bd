#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace smkit {

/// Process-wide worker cap for frontier expansion. Results never depend on it.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Applies fn to every index in [0, n) and returns the per-index results in
/// index order. Work is split into contiguous chunks, one worker each, and the
/// outputs are concatenated chunk by chunk, so the result equals the serial
/// one for any thread count.
template <typename Out>
std::vector<Out> ordered_parallel_map(std::size_t n,
                                      const std::function<Out(std::size_t)>& fn) {
  std::vector<Out> results(n);
  unsigned workers = thread_count();
  if (workers <= 1 || n < 512) {  // thread spawn costs dwarf small batches
    for (std::size_t i = 0; i < n; ++i) results[i] = fn(i);
    return results;
  }
  if (workers > n) workers = unsigned(n);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned t = 0; t < workers; ++t) {
    std::size_t lo = t * chunk;
    std::size_t hi = lo + chunk < n ? lo + chunk : n;
    if (lo >= hi) break;
    threads.emplace_back([&, lo, hi]() {
      for (std::size_t i = lo; i < hi; ++i) results[i] = fn(i);
    });
  }
  for (auto& th : threads) th.join();
  return results;
}

}  // namespace smkit
