#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace commutelab {

/// Process-wide worker count for the counting engines. Results are
/// bit-identical for every value: work is split into fixed chunks and
/// partial results are merged in chunk order.
inline unsigned& thread_count() {
  static unsigned n = 1;
  return n;
}

/// Maps f over [0, n) in contiguous chunks, one chunk per worker, and
/// returns the per-chunk results in index order. f(begin, end) -> R.
template <typename R, typename F>
std::vector<R> chunked_map(std::size_t n, F&& f) {
  unsigned workers = thread_count();
  if (workers <= 1 || n < 2) {
    std::vector<R> out;
    if (n > 0) out.push_back(f(std::size_t{0}, n));
    return out;
  }
  if (workers > n) workers = static_cast<unsigned>(n);
  std::vector<R> out(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    std::size_t begin = n * w / workers;
    std::size_t end = n * (w + 1) / workers;
    pool.emplace_back([&, w, begin, end] { out[w] = f(begin, end); });
  }
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace commutelab
