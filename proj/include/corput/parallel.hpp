#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace corput {

/// Worker count: CORPUT_THREADS when set to a positive integer, else the
/// hardware concurrency.
inline unsigned thread_count() {
  if (const char* env = std::getenv("CORPUT_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace detail {

inline bool& inside_parallel_region() {
  thread_local bool inside = false;
  return inside;
}

}  // namespace detail

/// Calls fn(chunk, begin, end) for every chunk of [0, count) of size `chunk_size`.
/// Chunk boundaries depend only on count and chunk_size, never on the thread
/// count, so per-chunk results reduced in chunk order are deterministic.
/// Calls made from inside a worker run inline.
template <class Fn>
void parallel_chunks(std::size_t count, std::size_t chunk_size, Fn&& fn) {
  if (count == 0) return;
  chunk_size = std::max<std::size_t>(chunk_size, 1);
  const std::size_t chunks = (count + chunk_size - 1) / chunk_size;
  const unsigned workers =
      detail::inside_parallel_region() ? 1u : static_cast<unsigned>(std::min<std::size_t>(thread_count(), chunks));
  auto run = [&](std::size_t c) { fn(c, c * chunk_size, std::min(count, (c + 1) * chunk_size)); };
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) run(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      detail::inside_parallel_region() = true;
      for (std::size_t c = next++; c < chunks; c = next++) {
        try {
          run(c);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = chunks;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

/// Chunk count used by parallel_chunks.
inline std::size_t chunk_count(std::size_t count, std::size_t chunk_size) {
  chunk_size = std::max<std::size_t>(chunk_size, 1);
  return (count + chunk_size - 1) / chunk_size;
}

}  // namespace corput
