#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace espo {

// Worker count used when a caller passes 0: ESPO_THREADS if set, otherwise
// the hardware concurrency.
unsigned default_workers();
void set_default_workers(unsigned workers);
unsigned resolve_workers(unsigned requested);

/// Runs f(i) for i in [0, tasks) on up to `workers` threads and returns the
/// results in task order. The first exception by task index is rethrown.
template <class T, class F>
std::vector<T> parallel_map(std::size_t tasks, unsigned workers, F&& f) {
  std::vector<std::optional<T>> slots(tasks);
  std::vector<std::exception_ptr> errors(tasks);
  const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(resolve_workers(workers), tasks));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < tasks;) {
      try {
        slots[i].emplace(f(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<T> out;
  out.reserve(tasks);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace espo
