#ifndef BZDOS_REDUCE_HPP
#define BZDOS_REDUCE_HPP

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace bzdos {

// Pairwise (tree) summation over a materialized array. The tree shape depends
// only on the length, so results are identical for any worker count.
template <typename T>
T pairwise_sum(const T* data, std::size_t n) {
  if (n == 0) return T{};
  if (n <= 8) {
    T acc = data[0];
    for (std::size_t i = 1; i < n; ++i) acc += data[i];
    return acc;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

template <typename T>
T pairwise_sum(const std::vector<T>& v) {
  return pairwise_sum(v.data(), v.size());
}

// Evaluate fn(i) for i in [0, n) with `threads` workers writing disjoint index
// ranges. Callers store per-index results and reduce them afterwards, keeping
// the reduction order fixed.
inline void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t nw = std::min<std::size_t>(threads, n);
  std::vector<std::thread> pool;
  pool.reserve(nw);
  for (std::size_t w = 0; w < nw; ++w) {
    pool.emplace_back([&, w] {
      const std::size_t lo = n * w / nw, hi = n * (w + 1) / nw;
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace bzdos

#endif
