#include "heavytail/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>

namespace heavytail::rng {

std::size_t worker_count() {
  std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("HEAVYTAIL_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(cap, &end, 10);
    if (end != cap && v >= 1) hw = std::min<std::size_t>(hw, static_cast<std::size_t>(v));
  }
  return hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
  constexpr std::size_t kChunk = 1 << 16;
  const std::size_t workers = std::min(worker_count(), (n + kChunk - 1) / kChunk);
  if (n == 0) return;
  if (workers <= 1) {
    body(0, n);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (;;) {
      const std::size_t begin = next.fetch_add(kChunk);
      if (begin >= n) return;
      body(begin, std::min(begin + kChunk, n));
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
}

double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 128) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

}  // namespace heavytail::rng
