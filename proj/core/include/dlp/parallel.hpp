#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "dlp/linalg.hpp"

namespace dlp {

// Replicas are grouped in fixed-size blocks; block b of a run with master
// seed m draws from stream(m, tag, b). Block size never depends on the thread
// count, so results are identical for any DLP_THREADS.
constexpr std::size_t kReplicaBlock = 1024;

std::uint64_t mix64(std::uint64_t x);
std::uint64_t stream_seed(std::uint64_t master, std::uint64_t tag, std::uint64_t index);
Rng stream(std::uint64_t master, std::uint64_t tag, std::uint64_t index);
std::uint64_t tag_of(const char* name);

// DLP_THREADS if set and positive, else the hardware concurrency.
int thread_count();

// Runs f(block, begin, end) over [0, n) in kReplicaBlock chunks and returns
// the per-block results in block order.
template <class F>
auto parallel_blocks(std::size_t n, F f) -> std::vector<decltype(f(std::size_t(0), std::size_t(0), std::size_t(0)))> {
  using R = decltype(f(std::size_t(0), std::size_t(0), std::size_t(0)));
  std::size_t blocks = (n + kReplicaBlock - 1) / kReplicaBlock;
  std::vector<R> out(blocks);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t b; (b = next.fetch_add(1)) < blocks;) {
      try {
        std::size_t begin = b * kReplicaBlock;
        out[b] = f(b, begin, std::min(n, begin + kReplicaBlock));
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  int threads = std::min<int>(thread_count(), static_cast<int>(blocks));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace dlp
