#include "percolata/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace percolata {

int worker_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("PERCOLATA_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) n = std::min<long>(n, cap);
  }
  return n;
}

void parallel_ranges(
    std::int64_t total,
    const std::function<void(int, std::int64_t, std::int64_t)>& body) {
  const int workers = static_cast<int>(
      std::min<std::int64_t>(worker_count(), std::max<std::int64_t>(total, 1)));
  if (workers <= 1) {
    body(0, 0, total);
    return;
  }
  std::vector<std::thread> pool;
  const std::int64_t chunk = (total + workers - 1) / workers;
  for (int i = 0; i < workers; ++i) {
    const std::int64_t begin = i * chunk;
    const std::int64_t end = std::min<std::int64_t>(begin + chunk, total);
    if (begin >= end) break;
    pool.emplace_back([&body, i, begin, end] { body(i, begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace percolata
