#include "scatterqual/parallel.hpp"

#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace scatterqual {

namespace {
std::atomic<int> g_default_threads{0};
}

void set_default_threads(int n) { g_default_threads.store(n < 0 ? 0 : n); }

int default_threads() {
  int n = g_default_threads.load();
  if (n > 0) return n;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_chunks(std::size_t count, std::size_t chunk, int threads,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
  if (count == 0) return;
  if (chunk == 0) chunk = 1;
  const std::size_t nchunks = (count + chunk - 1) / chunk;
  int nthreads = threads > 0 ? threads : default_threads();
  if (nthreads < 1) nthreads = 1;
  if (static_cast<std::size_t>(nthreads) > nchunks) nthreads = static_cast<int>(nchunks);

  if (nthreads == 1) {
    for (std::size_t ci = 0; ci < nchunks; ++ci) {
      const std::size_t begin = ci * chunk;
      fn(ci, begin, std::min(begin + chunk, count));
    }
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (;;) {
      const std::size_t ci = next.fetch_add(1);
      if (ci >= nchunks || failed.load()) return;
      const std::size_t begin = ci * chunk;
      try {
        fn(ci, begin, std::min(begin + chunk, count));
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(nthreads));
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failed.load() && error) std::rethrow_exception(error);
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
  parallel_chunks(count, 16, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) fn(i);
  });
}

}  // namespace scatterqual
