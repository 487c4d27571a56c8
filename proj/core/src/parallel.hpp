#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace graphcx::detail {

/// Runs body(task, worker) for task in [0, tasks) on up to `jobs` threads,
/// worker in [0, workers). The first exception is rethrown after all
/// threads join. Returns the worker count used.
template <class Body>
unsigned parallel_for(std::size_t tasks, unsigned jobs, Body&& body) {
  const unsigned workers = static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(jobs == 0 ? 1 : jobs, tasks)));
  if (workers == 1) {
    for (std::size_t t = 0; t < tasks; ++t) body(t, 0u);
    return 1;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto loop = [&](unsigned worker) {
    try {
      for (std::size_t t; (t = next.fetch_add(1)) < tasks;) body(t, worker);
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      next = tasks;
    }
  };
  std::vector<std::thread> threads;
  for (unsigned w = 1; w < workers; ++w) threads.emplace_back(loop, w);
  loop(0);
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
  return workers;
}

/// Workers to use when the caller passes 0.
inline unsigned default_jobs() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace graphcx::detail
