#include "obbkit/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace obbkit {

int resolve_workers(int requested) {
  if (const char* env = std::getenv("OBBKIT_WORKERS")) {
    try {
      requested = std::stoi(env);
    } catch (const std::exception&) {
      // ignore malformed override
    }
  }
  if (requested <= 0) {
    const unsigned hc = std::thread::hardware_concurrency();
    requested = hc == 0 ? 1 : static_cast<int>(hc);
  }
  return std::max(requested, 1);
}

void parallel_for(std::size_t count, int workers,
                  const std::function<void(std::size_t, std::size_t)>& chunk_fn) {
  if (count == 0) return;
  const std::size_t n_threads =
      std::min<std::size_t>(std::max(workers, 1), count);
  if (n_threads <= 1) {
    chunk_fn(0, count);
    return;
  }
  const std::size_t chunk = (count + n_threads - 1) / n_threads;
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(begin + chunk, count);
    if (begin >= end) break;
    pool.emplace_back([&chunk_fn, begin, end] { chunk_fn(begin, end); });
  }
  for (std::thread& th : pool) th.join();
}

}  // namespace obbkit
