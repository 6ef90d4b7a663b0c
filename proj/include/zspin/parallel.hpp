#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace zspin::detail {

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

// Fixed chunk size for deterministic reductions. Partial sums are always
// added in chunk order, so results do not depend on the worker count or
// schedule.
inline constexpr std::size_t kChunk = 4096;

template <typename F>
std::complex<double> ordered_chunk_sum(std::size_t count, F&& chunk_sum) {
  const std::size_t nchunks = (count + kChunk - 1) / kChunk;
  std::vector<std::complex<double>> partial(nchunks);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(nchunks); ++c) {
    const std::size_t begin = static_cast<std::size_t>(c) * kChunk;
    const std::size_t end = std::min(begin + kChunk, count);
    partial[static_cast<std::size_t>(c)] = chunk_sum(begin, end);
  }
  std::complex<double> total = 0;
  for (const auto& p : partial) total += p;
  return total;
}

template <typename F>
std::complex<double> ordered_chunk_sum_serial(std::size_t count, F&& chunk_sum) {
  const std::size_t nchunks = (count + kChunk - 1) / kChunk;
  std::complex<double> total = 0;
  for (std::size_t c = 0; c < nchunks; ++c) {
    const std::size_t begin = c * kChunk;
    const std::size_t end = std::min(begin + kChunk, count);
    total += chunk_sum(begin, end);
  }
  return total;
}

}  // namespace zspin::detail
