#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace poissym {

/// Worker count from POISSYM_THREADS; 1 when unset or malformed.
inline unsigned configured_threads() {
  const char* env = std::getenv("POISSYM_THREADS");
  if (!env || !*env) return 1;
  try {
    const long v = std::stol(env);
    return v < 1 ? 1u : static_cast<unsigned>(std::min<long>(v, 256));
  } catch (const std::exception&) {
    return 1;
  }
}

/// out[i] = fn(i) for i in [0, count), computed on up to `threads` workers.
/// Results land in index order whatever the schedule; the first exception
/// thrown by any task is rethrown on the caller's thread.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, Fn&& fn, unsigned threads = configured_threads()) {
  std::vector<T> out(count);
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
      }
    }
  };
  std::vector<std::thread> pool;
  const auto n = static_cast<std::size_t>(std::min<std::size_t>(threads, count));
  for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace poissym
