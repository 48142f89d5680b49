#pragma once

#include <array>
#include <cmath>
#include <concepts>

#include "quadineq/scalar.hpp"

namespace quadineq {

/// Forward-mode dual number with N tangent directions over scalar T.
///
/// With T = Interval the tangent components enclose the partial derivatives
/// over a whole box, which is what the mean-value enclosures need.
template <class T, int N>
struct Dual {
  T value{};
  std::array<T, N> grad{};

  Dual() = default;
  template <class U>
    requires std::convertible_to<U, T>
  Dual(const U& c) : value(T(c)) {  // NOLINT: constants promote implicitly
    grad.fill(T(0.0));
  }

  static Dual variable(const T& v, int index) {
    Dual r(v);
    r.grad[index] = T(1.0);
    return r;
  }

  Dual operator-() const {
    Dual r;
    r.value = -value;
    for (int i = 0; i < N; ++i) r.grad[i] = -grad[i];
    return r;
  }

  Dual& operator+=(const Dual& o) { return *this = *this + o; }
  Dual& operator-=(const Dual& o) { return *this = *this - o; }
  Dual& operator*=(const Dual& o) { return *this = *this * o; }
  Dual& operator/=(const Dual& o) { return *this = *this / o; }

  friend Dual operator+(const Dual& x, const Dual& y) {
    Dual r;
    r.value = x.value + y.value;
    for (int i = 0; i < N; ++i) r.grad[i] = x.grad[i] + y.grad[i];
    return r;
  }

  friend Dual operator-(const Dual& x, const Dual& y) {
    Dual r;
    r.value = x.value - y.value;
    for (int i = 0; i < N; ++i) r.grad[i] = x.grad[i] - y.grad[i];
    return r;
  }

  friend Dual operator*(const Dual& x, const Dual& y) {
    Dual r;
    r.value = x.value * y.value;
    for (int i = 0; i < N; ++i) r.grad[i] = x.grad[i] * y.value + x.value * y.grad[i];
    return r;
  }

  friend Dual operator/(const Dual& x, const Dual& y) {
    Dual r;
    r.value = x.value / y.value;
    for (int i = 0; i < N; ++i) r.grad[i] = (x.grad[i] - r.value * y.grad[i]) / y.value;
    return r;
  }
};

namespace detail {

template <class T, int N>
Dual<T, N> chain(const T& value, const T& slope, const Dual<T, N>& x) {
  Dual<T, N> r;
  r.value = value;
  for (int i = 0; i < N; ++i) r.grad[i] = slope * x.grad[i];
  return r;
}

}  // namespace detail

template <class T, int N>
Dual<T, N> sin(const Dual<T, N>& x) {
  using std::cos;
  using std::sin;
  return detail::chain(T(sin(x.value)), T(cos(x.value)), x);
}

template <class T, int N>
Dual<T, N> cos(const Dual<T, N>& x) {
  using std::cos;
  using std::sin;
  return detail::chain(T(cos(x.value)), T(-sin(x.value)), x);
}

template <class T, int N>
Dual<T, N> sqrt(const Dual<T, N>& x) {
  using std::sqrt;
  const T s = sqrt(x.value);
  return detail::chain(s, T(1.0) / (T(2.0) * s), x);
}

template <class T, int N>
Dual<T, N> square(const Dual<T, N>& x) {
  return detail::chain(T(square(x.value)), T(2.0) * x.value, x);
}

template <class T, int N>
Dual<T, N> atan2(const Dual<T, N>& y, const Dual<T, N>& x) {
  using std::atan2;
  Dual<T, N> r;
  r.value = atan2(y.value, x.value);
  const T denom = square(x.value) + square(y.value);
  for (int i = 0; i < N; ++i) r.grad[i] = (x.value * y.grad[i] - y.value * x.grad[i]) / denom;
  return r;
}

template <class T, int N>
struct ScalarConstants<Dual<T, N>> {
  static Dual<T, N> pi() { return Dual<T, N>(ScalarConstants<T>::pi()); }
};

}  // namespace quadineq
