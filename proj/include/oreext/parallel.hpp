#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

namespace oreext {

/// Worker-pool width used by the exhaustive checkers. Results never depend on it.
void set_jobs(unsigned jobs);
unsigned jobs();

namespace detail {
inline constexpr std::size_t kBlock = 64;
}

/// Smallest index i in [0, count) for which fails(i) is true.
///
/// Blocks of indices are handed out in increasing order; a block starting past
/// the best failure found so far is skipped, so the answer is the global
/// minimum for any worker count.
template <class Pred>
std::optional<std::size_t> find_first(std::size_t count, Pred&& fails) {
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  std::atomic<std::size_t> best{none};
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t start = next.fetch_add(detail::kBlock);
      if (start >= count || start >= best.load()) return;
      const std::size_t stop = std::min(count, start + detail::kBlock);
      for (std::size_t i = start; i < stop; ++i) {
        if (fails(i)) {
          std::size_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
          break;
        }
      }
    }
  };
  const unsigned width = std::max(1u, std::min<unsigned>(jobs(), static_cast<unsigned>((count + detail::kBlock - 1) / detail::kBlock)));
  if (width <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(width);
    for (unsigned t = 0; t < width; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  const std::size_t found = best.load();
  if (found == none) return std::nullopt;
  return found;
}

/// Runs body(i) for every i in [0, count). Bodies must write disjoint state.
template <class Body>
void parallel_for(std::size_t count, Body&& body) {
  find_first(count, [&](std::size_t i) {
    body(i);
    return false;
  });
}

}  // namespace oreext
