#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace qcgeo {

/// Runs fn(i) for i in [0, n). With threads > 1, indices are claimed from a
/// shared counter; fn must not throw (wrap per-index error handling inside).
/// Results must be written to disjoint slots so the merge is deterministic.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      fn(i);
    }
  };
  const std::size_t nw = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  std::vector<std::thread> pool;
  pool.reserve(nw);
  for (std::size_t w = 0; w < nw; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace qcgeo
