#pragma once

#include <cstdint>
#include <vector>

#include "chainseq/errors.hpp"
#include "chainseq/scalar.hpp"

namespace chainseq {

/// Orbit x_0, x_1, ..., x_k of the map f(x) = 1 - 1/(4x) on [1/2, 1].
/// The orbit is non-increasing, stays in [1/2, 1], and tends to the fixed
/// point 1/2.
template <Numeric T>
struct IterationTrace {
  std::vector<T> x;

  std::int64_t steps() const { return static_cast<std::int64_t>(x.size()) - 1; }
};

template <Numeric T>
T apply_f(const T& x) {
  const T half = numeric_traits<T>::ratio(1, 2);
  const T one = numeric_traits<T>::ratio(1, 1);
  if (x < half || x > one) throw DomainError("f is defined on [1/2, 1]");
  return one - numeric_traits<T>::ratio(1, 4) / x;
}

template <Numeric T>
IterationTrace<T> iterate_f(T x0, std::int64_t k) {
  const T half = numeric_traits<T>::ratio(1, 2);
  const T one = numeric_traits<T>::ratio(1, 1);
  if (x0 < half || x0 > one) throw DomainError("seed must lie in [1/2, 1]");
  if (k < 0) throw DomainError("iteration count must be >= 0");
  IterationTrace<T> trace;
  trace.x.reserve(static_cast<std::size_t>(k) + 1);
  trace.x.push_back(std::move(x0));
  for (std::int64_t i = 0; i < k; ++i) trace.x.push_back(apply_f(trace.x.back()));
  return trace;
}

/// x_i - 1/2 for each trace entry; all nonnegative and non-increasing.
template <Numeric T>
std::vector<T> distance_to_fixed_point(const IterationTrace<T>& trace) {
  const T half = numeric_traits<T>::ratio(1, 2);
  std::vector<T> out;
  out.reserve(trace.x.size());
  for (const T& x : trace.x) out.push_back(x - half);
  return out;
}

}  // namespace chainseq
