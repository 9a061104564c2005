#pragma once

#include <cstddef>
#include <future>
#include <thread>
#include <vector>

namespace swarmsim {

/// Run fn(0..count-1) across up to `jobs` threads (0 = hardware default)
/// and return results ordered by index. Work items must be independent;
/// simulation worlds share no state, so ensemble and sweep points qualify.
template <typename Fn>
auto parallel_map(std::size_t count, unsigned jobs, Fn&& fn)
    -> std::vector<decltype(fn(std::size_t{0}))> {
  using Result = decltype(fn(std::size_t{0}));
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());

  std::vector<Result> results(count);
  if (count == 0) return results;
  if (jobs == 1 || count == 1) {
    for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      results[i] = fn(i);
    }
  };
  std::vector<std::future<void>> futures;
  const unsigned n_threads = std::min<std::size_t>(jobs, count);
  futures.reserve(n_threads);
  for (unsigned t = 0; t < n_threads; ++t)
    futures.push_back(std::async(std::launch::async, worker));
  for (auto& f : futures) f.get();
  return results;
}

}  // namespace swarmsim
