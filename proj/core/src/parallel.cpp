#include "forge/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace forge {

int worker_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n <= 0) n = 1;
  if (const char* cap = std::getenv("FIBRATION_FORGE_THREADS")) {
    const int c = std::atoi(cap);
    if (c >= 1) n = std::min(n, c);
  }
  return n;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const int workers = worker_count();
  if (count == 0) return;
  if (workers == 1 || count < 16) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto run = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int spawn = std::min<std::size_t>(static_cast<std::size_t>(workers), count);
  pool.reserve(static_cast<size_t>(spawn));
  for (int t = 0; t < spawn; ++t) pool.emplace_back(run);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace forge
