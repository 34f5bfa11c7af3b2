#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace pslab {

/// Execution policy threaded through the data-parallel kernels. Results never
/// depend on thread count; `sequential` forces a single worker.
struct Exec {
  unsigned threads = 1;
  bool sequential = true;

  unsigned workers() const { return sequential ? 1u : std::max(1u, threads); }
};

/// Runs body(chunk_index, begin, end) over [0, n) split into contiguous chunks,
/// one per worker. Chunk boundaries depend only on n and worker count, so
/// callers that merge per-chunk results in chunk order are deterministic.
template <class Body>
void parallel_chunks(std::size_t n, const Exec& exec, Body&& body) {
  const std::size_t workers = std::min<std::size_t>(exec.workers(), std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    body(std::size_t{0}, std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  const std::size_t step = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = std::min(n, w * step);
    const std::size_t hi = std::min(n, lo + step);
    pool.emplace_back([&, w, lo, hi] {
      try {
        body(w, lo, hi);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

inline std::size_t chunk_count(std::size_t n, const Exec& exec) {
  return std::min<std::size_t>(exec.workers(), std::max<std::size_t>(n, 1));
}

}  // namespace pslab
