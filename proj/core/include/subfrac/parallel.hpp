#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace subfrac {

/// Runs fn(begin, end) over contiguous chunks of [begin, end) on `workers`
/// threads. Chunk boundaries depend only on (begin, end, workers), and the
/// callers of this helper key their randomness per index, so results are
/// independent of the worker count.
template <typename Fn>
void parallel_for(std::size_t begin, std::size_t end, int workers, Fn&& fn) {
  const std::size_t count = end > begin ? end - begin : 0;
  if (count == 0) return;
  if (workers <= 1 || count == 1) {
    fn(begin, end);
    return;
  }
  const std::size_t nthreads = std::min<std::size_t>(static_cast<std::size_t>(workers), count);
  const std::size_t chunk = (count + nthreads - 1) / nthreads;

  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (std::size_t w = 0; w < nthreads; ++w) {
    const std::size_t lo = begin + w * chunk;
    const std::size_t hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      try {
        fn(lo, hi);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

/// Fixed-order pairwise summation. Associativity of the reduction is pinned
/// by the recursion, so sums are bit-identical however the values were
/// produced (serially or by any number of workers).
inline double pairwise_sum(const double* data, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += data[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

inline double pairwise_sum(const std::vector<double>& v) {
  return pairwise_sum(v.data(), v.size());
}

}  // namespace subfrac
