#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace macksolve {

// Thread count from MACKSOLVE_THREADS (default 1).
inline int env_threads() {
  const char* s = std::getenv("MACKSOLVE_THREADS");
  if (!s) return 1;
  int n = std::atoi(s);
  return std::clamp(n, 1, 256);
}

// Runs fn(i) for i in [0, n) on up to `threads` workers. Results must be written to
// per-index slots, which keeps the output independent of scheduling. The first
// exception (lowest index) is rethrown.
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  threads = std::max(1, std::min<int>(threads, static_cast<int>(n)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::exception_ptr err;
  std::size_t err_index = n;
  auto work = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (i < err_index) {
          err_index = i;
          err = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace macksolve
