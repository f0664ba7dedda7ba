#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <optional>
#include <thread>
#include <vector>

namespace degenforge::detail {

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs `task(pos)` for positions in [0, count) and returns the smallest
/// position for which it reported a hit. Positions are handed out in
/// ascending order, so positions above the current best may be skipped
/// without changing the answer. `task` must only write state owned by `pos`.
template <class Task>
std::optional<std::size_t> first_hit(std::size_t count, unsigned threads, Task&& task) {
  threads = std::min<std::size_t>(resolve_threads(threads), count);
  if (threads <= 1) {
    for (std::size_t pos = 0; pos < count; ++pos)
      if (task(pos)) return pos;
    return std::nullopt;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{count};
  auto worker = [&] {
    for (;;) {
      const std::size_t pos = next.fetch_add(1);
      if (pos >= count || pos >= best.load()) return;
      if (task(pos)) {
        std::size_t cur = best.load();
        while (pos < cur && !best.compare_exchange_weak(cur, pos)) {
        }
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  const std::size_t found = best.load();
  if (found == count) return std::nullopt;
  return found;
}

}  // namespace degenforge::detail
