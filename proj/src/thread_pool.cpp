#include "negdep/thread_pool.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace negdep {

void parallel_for_blocks(std::size_t nblocks, int threads,
                         const std::function<void(std::size_t)>& fn) {
  if (nblocks == 0) return;
  if (threads < 1) threads = 1;
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), nblocks);
  if (workers == 1) {
    for (std::size_t b = 0; b < nblocks; ++b) fn(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    while (true) {
      const std::size_t b = next.fetch_add(1);
      if (b >= nblocks) return;
      try {
        fn(b);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace negdep
