#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace collide {

/// Runs fn(worker, begin, end) over a static partition of [0, n) into at most
/// `workers` contiguous chunks and returns the per-worker results in chunk
/// order. The first exception thrown by any worker is rethrown.
template <class Result, class Fn>
std::vector<Result> parallel_chunks(std::uint64_t n, int workers, Fn&& fn)
{
  const std::uint64_t chunks =
      std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers < 1 ? 1 : workers, n));
  std::vector<Result> results(chunks);
  std::vector<std::exception_ptr> errors(chunks);

  auto body = [&](std::uint64_t w) {
    const std::uint64_t begin = n * w / chunks;
    const std::uint64_t end = n * (w + 1) / chunks;
    try {
      results[w] = fn(w, begin, end);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };

  if (chunks == 1) {
    body(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(chunks);
    for (std::uint64_t w = 0; w < chunks; ++w)
      threads.emplace_back(body, w);
    for (auto& t : threads)
      t.join();
  }
  for (auto& e : errors)
    if (e)
      std::rethrow_exception(e);
  return results;
}

/// Thread count: $COLLIDE_THREADS if set to a positive integer, else the
/// request if positive, else hardware concurrency.
int resolve_workers(int requested);

}  // namespace collide
