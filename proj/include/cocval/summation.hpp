#pragma once

#include <cstddef>
#include <span>

namespace cocval {

// Pairwise (cascade) summation with a fixed split rule, so the result depends
// only on the input order and not on how callers partition the work.
inline double pairwise_sum(std::span<const double> xs) {
  constexpr std::size_t kBlock = 64;
  if (xs.size() <= kBlock) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

// Same reduction applied to f(i) for i in [0, n).
template <class F>
double pairwise_sum_of(std::size_t begin, std::size_t end, const F& f) {
  constexpr std::size_t kBlock = 64;
  if (end - begin <= kBlock) {
    double s = 0.0;
    for (std::size_t i = begin; i < end; ++i) s += f(i);
    return s;
  }
  const std::size_t mid = begin + (end - begin) / 2;
  return pairwise_sum_of(begin, mid, f) + pairwise_sum_of(mid, end, f);
}

}  // namespace cocval
