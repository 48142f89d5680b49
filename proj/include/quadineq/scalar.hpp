#pragma once

#include <numbers>

#include "quadineq/interval.hpp"

namespace quadineq {

/// Per-scalar constants for the templated formulas. Specialized for every
/// scalar type the toolkit evaluates with (double, long double, Interval,
/// Dual<...>).
template <class T>
struct ScalarConstants {
  static T pi() { return T(std::numbers::pi_v<double>); }
};

template <>
struct ScalarConstants<long double> {
  static long double pi() { return std::numbers::pi_v<long double>; }
};

template <>
struct ScalarConstants<Interval> {
  static Interval pi() { return pi_interval(); }
};

template <class T>
inline T pi_as() {
  return ScalarConstants<T>::pi();
}

/// x * x; the interval overload knows both factors are the same variable.
template <class T>
inline T square(const T& x) {
  return x * x;
}

inline Interval square(const Interval& x) { return sqr(x); }

}  // namespace quadineq
