#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace coxmal {

inline constexpr std::uint64_t kChunkSize = 4096;

/// Worker count for `requested` threads; 0 means hardware concurrency.
inline unsigned resolve_threads(unsigned requested) noexcept {
  if (requested > 0) return requested;
  return std::max(1U, std::thread::hardware_concurrency());
}

/// Splits [0, total) into fixed chunks of kChunkSize and evaluates
/// `body(chunk, begin, end)` for each one on up to `threads` workers.
/// Results come back in chunk order, so any reduction over them is
/// independent of scheduling. The first exception thrown by a worker is
/// rethrown on the calling thread.
template <class Body>
auto run_chunked(std::uint64_t total, unsigned threads, Body body) {
  using Result = decltype(body(std::uint64_t{}, std::uint64_t{}, std::uint64_t{}));
  const std::uint64_t chunks = (total + kChunkSize - 1) / kChunkSize;
  std::vector<Result> results(chunks);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::uint64_t c = next.fetch_add(1);
      if (c >= chunks) return;
      const std::uint64_t begin = c * kChunkSize;
      const std::uint64_t end = std::min(total, begin + kChunkSize);
      try {
        results[c] = body(c, begin, end);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(chunks);
      }
    }
  };

  const auto n = static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(threads), std::max<std::uint64_t>(chunks, 1)));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace coxmal
