#pragma once

// Worker pool over global sample-index ranges.
//
// The range is cut into chunks whose boundaries depend only on the range and
// the chunk size. Each chunk is processed sequentially by one worker and the
// per-chunk results come back in index order, so an ordered reduction gives
// bit-identical results for every worker count.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ghzq {

inline constexpr std::uint64_t kDefaultChunkSize = 1u << 14;

/// 0 means "one worker per hardware thread".
inline unsigned resolve_workers(unsigned requested) noexcept {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

/// Calls fn(begin, count) for each chunk of [first, first + total) and
/// returns the results in chunk order. The first exception thrown by any
/// chunk is rethrown after all workers stop.
template <class Fn>
auto map_chunks(std::uint64_t first, std::uint64_t total, unsigned workers, Fn&& fn,
                std::uint64_t chunk_size = kDefaultChunkSize) {
  using Result = decltype(fn(std::uint64_t{}, std::uint64_t{}));
  const std::uint64_t chunks = total == 0 ? 0 : (total + chunk_size - 1) / chunk_size;
  std::vector<Result> results(chunks);

  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto work = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::uint64_t c = next.fetch_add(1, std::memory_order_relaxed);
      if (c >= chunks) return;
      const std::uint64_t begin = c * chunk_size;
      const std::uint64_t count = std::min(chunk_size, total - begin);
      try {
        results[c] = fn(first + begin, count);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
      }
    }
  };

  const unsigned n = static_cast<unsigned>(
      std::min<std::uint64_t>(resolve_workers(workers), std::max<std::uint64_t>(chunks, 1)));
  if (n <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
  return results;
}

}  // namespace ghzq
