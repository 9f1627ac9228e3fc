#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace semigrav {

// Evaluates fn(i) for i in [0, n) on a bounded pool of worker threads.
// Results keep index order; the first exception by index is rethrown.
template <class R, class Fn>
std::vector<R> parallel_map(std::size_t n, Fn fn, std::size_t max_workers = 0) {
  std::vector<R> out(n);
  std::vector<std::exception_ptr> errors(n);
  if (max_workers == 0) max_workers = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min(max_workers, n);
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  if (workers > 0) work();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace semigrav
