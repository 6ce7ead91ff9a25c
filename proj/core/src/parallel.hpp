#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace tcensus::detail {

// Splits [begin, end) into fixed chunks and hands them to `workers` threads.
// `fn(lo, hi, chunk)` writes only to per-chunk state, so the result does not
// depend on the worker count or on scheduling. The first exception thrown
// by any chunk is rethrown on the calling thread.
template <typename Fn>
void parallel_chunks(std::int64_t begin, std::int64_t end, std::size_t chunks,
                     unsigned workers, Fn&& fn) {
  if (end <= begin) return;
  const auto span = static_cast<std::uint64_t>(end - begin);
  chunks = std::max<std::size_t>(1, std::min<std::uint64_t>(chunks, span));
  auto bounds = [&](std::size_t c) {
    return begin + static_cast<std::int64_t>(span * c / chunks);
  };
  workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(chunks)));
  if (workers == 1) {
    for (std::size_t c = 0; c < chunks; ++c) fn(bounds(c), bounds(c + 1), c);
    return;
  }
  std::mutex mu;
  std::size_t next = 0;
  std::exception_ptr error;
  auto worker = [&] {
    for (;;) {
      std::size_t c;
      {
        std::lock_guard lock(mu);
        if (error || next >= chunks) return;
        c = next++;
      }
      try {
        fn(bounds(c), bounds(c + 1), c);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace tcensus::detail
