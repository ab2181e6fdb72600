#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace shortcut_splits {

/// Runs fn(begin, end, chunk_index) over contiguous chunks of [0, n) on up to
/// `threads` std::threads. Chunk boundaries depend only on (n, threads), so
/// callers that merge per-chunk results in chunk order stay deterministic.
template <typename Fn>
void parallel_chunks(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads <= 1 || n < 2) {
    if (n > 0) fn(std::size_t{0}, n, std::size_t{0});
    return;
  }
  const std::size_t n_chunks = std::min<std::size_t>(threads, n);
  const std::size_t base = n / n_chunks;
  const std::size_t extra = n % n_chunks;
  std::vector<std::thread> workers;
  workers.reserve(n_chunks);
  std::size_t begin = 0;
  for (std::size_t c = 0; c < n_chunks; ++c) {
    const std::size_t len = base + (c < extra ? 1 : 0);
    const std::size_t end = begin + len;
    workers.emplace_back([&fn, begin, end, c] { fn(begin, end, c); });
    begin = end;
  }
  for (auto& w : workers) w.join();
}

}  // namespace shortcut_splits
