#pragma once

// Minimal data-parallel loop. Every index writes its own output slot and all
// reductions happen afterwards in index order, so results are bit-identical
// for any thread count.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace crown {

namespace detail {
inline int default_thread_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n <= 0) n = 1;
  if (const char* env = std::getenv("CROWN_HARMONICS_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  return n;
}

inline std::atomic<int>& thread_setting() {
  static std::atomic<int> threads{default_thread_count()};
  return threads;
}
}  // namespace detail

/// Upper bound on worker threads; 1 means strictly sequential execution.
inline int max_threads() { return detail::thread_setting().load(); }

inline void set_max_threads(int n) {
  detail::thread_setting().store(std::max(1, n));
}

/// RAII override of the thread cap, restored on scope exit.
class ThreadCapGuard {
 public:
  explicit ThreadCapGuard(int n) : saved_(max_threads()) { set_max_threads(n); }
  ~ThreadCapGuard() { set_max_threads(saved_); }
  ThreadCapGuard(const ThreadCapGuard&) = delete;
  ThreadCapGuard& operator=(const ThreadCapGuard&) = delete;

 private:
  int saved_;
};

template <typename Body>
void parallel_for(std::size_t count, Body&& body) {
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(max_threads()), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(count);
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace crown
