#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace condnum {

// Runs body(begin, end) over contiguous chunks of [0, n) on worker threads.
// Callers write results by index, so output does not depend on the partition.
template <class Body>
void parallel_for(std::size_t n, Body body, std::size_t min_chunk = 256) {
  std::size_t workers = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(1, n / min_chunk));
  if (workers <= 1) {
    body(std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t b = w * chunk;
    std::size_t e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&body, b, e] { body(b, e); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace condnum
