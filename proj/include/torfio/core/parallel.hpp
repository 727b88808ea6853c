#pragma once

// Static-partition parallel loop. Each index is written by exactly one
// worker, so results do not depend on the thread count.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace torfio {

namespace detail {
inline std::atomic<unsigned>& default_thread_slot() {
  static std::atomic<unsigned> n{1};
  return n;
}
}  // namespace detail

inline bool& inside_worker() {
  thread_local bool flag = false;
  return flag;
}

/// 1 inside a worker, so nested loops run serially.
inline unsigned default_threads() { return inside_worker() ? 1u : detail::default_thread_slot().load(); }

/// 0 selects std::thread::hardware_concurrency().
inline void set_default_threads(unsigned n) {
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  detail::default_thread_slot().store(n);
}

template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn, unsigned threads = default_threads()) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t begin = count * t / threads;
    const std::size_t end = count * (t + 1) / threads;
    pool.emplace_back([&, begin, end] {
      inside_worker() = true;
      try {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace torfio
