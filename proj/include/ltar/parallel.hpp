#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace ltar {

/// Number of hardware threads, at least 1.
inline unsigned hardware_workers() noexcept {
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(i) for i in [0, count) on up to `workers` threads. Tasks are
/// handed out dynamically; results must be written to per-index slots. If
/// any task throws, the exception of the lowest failing index is rethrown
/// after all threads finish.
template <typename Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body) {
  const auto threads =
      static_cast<std::size_t>(std::min<std::size_t>(std::max(1u, workers), count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      body(i);
    }
    return;
  }
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads - 1);
    for (std::size_t t = 1; t < threads; ++t) {
      pool.emplace_back(run);
    }
    run();
  }
  for (const auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
}

}  // namespace ltar
