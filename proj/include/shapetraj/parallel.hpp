#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace shapetraj {

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Each index owns
/// its output slot, so the result does not depend on scheduling. fn must not
/// throw across threads; wrap and rethrow at the call site if needed.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(threads, count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += workers) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace shapetraj
