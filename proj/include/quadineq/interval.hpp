#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>

#include "quadineq/error.hpp"

namespace quadineq {

namespace rounding {

inline double down(double x, int ulps = 1) {
  for (int i = 0; i < ulps; ++i) x = std::nextafter(x, -std::numeric_limits<double>::infinity());
  return x;
}

inline double up(double x, int ulps = 1) {
  for (int i = 0; i < ulps; ++i) x = std::nextafter(x, std::numeric_limits<double>::infinity());
  return x;
}

}  // namespace rounding

/// Closed interval [lo, hi] of doubles.
///
/// Every operation returns an enclosure of the exact image: results are
/// computed in round-to-nearest and then widened outward by one ulp per
/// endpoint (two for transcendental functions). No rounding-mode state is
/// touched, so evaluations are safe to interleave across threads.
class Interval {
 public:
  Interval() = default;
  Interval(double v) : lo_(v), hi_(v) {}  // NOLINT: implicit point interval
  Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!(lo <= hi)) throw Error("Interval: lower endpoint exceeds upper endpoint or is NaN");
  }

  /// Interval known to satisfy lo <= hi; skips validation.
  static Interval unchecked(double lo, double hi) {
    Interval r;
    r.lo_ = lo;
    r.hi_ = hi;
    return r;
  }

  static Interval entire() {
    return unchecked(-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity());
  }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double mid() const { return lo_ == hi_ ? lo_ : lo_ + 0.5 * (hi_ - lo_); }
  double width() const { return hi_ - lo_; }
  double mag() const { return std::max(std::abs(lo_), std::abs(hi_)); }

  bool contains(double x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool contains_zero() const { return lo_ <= 0.0 && 0.0 <= hi_; }
  bool is_point() const { return lo_ == hi_; }

  Interval operator-() const { return unchecked(-hi_, -lo_); }

  Interval& operator+=(const Interval& o);
  Interval& operator-=(const Interval& o);
  Interval& operator*=(const Interval& o);
  Interval& operator/=(const Interval& o);

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lo_ = 0.0;
  double hi_ = 0.0;
};

inline Interval operator+(const Interval& x, const Interval& y) {
  return Interval::unchecked(rounding::down(x.lo() + y.lo()), rounding::up(x.hi() + y.hi()));
}

inline Interval operator-(const Interval& x, const Interval& y) {
  return Interval::unchecked(rounding::down(x.lo() - y.hi()), rounding::up(x.hi() - y.lo()));
}

inline Interval operator*(const Interval& x, const Interval& y) {
  if (x.is_point() && y.is_point()) {
    const double p = x.lo() * y.lo();
    return Interval::unchecked(rounding::down(p), rounding::up(p));
  }
  const double a = x.lo() * y.lo();
  const double b = x.lo() * y.hi();
  const double c = x.hi() * y.lo();
  const double d = x.hi() * y.hi();
  return Interval::unchecked(rounding::down(std::min({a, b, c, d})), rounding::up(std::max({a, b, c, d})));
}

inline Interval operator/(const Interval& x, const Interval& y) {
  if (y.contains_zero()) throw DivisionByZeroInterval("interval division by an interval containing zero");
  const double a = x.lo() / y.lo();
  const double b = x.lo() / y.hi();
  const double c = x.hi() / y.lo();
  const double d = x.hi() / y.hi();
  return Interval::unchecked(rounding::down(std::min({a, b, c, d})), rounding::up(std::max({a, b, c, d})));
}

inline Interval& Interval::operator+=(const Interval& o) { return *this = *this + o; }
inline Interval& Interval::operator-=(const Interval& o) { return *this = *this - o; }
inline Interval& Interval::operator*=(const Interval& o) { return *this = *this * o; }
inline Interval& Interval::operator/=(const Interval& o) { return *this = *this / o; }

inline Interval hull(const Interval& x, const Interval& y) {
  return Interval::unchecked(std::min(x.lo(), y.lo()), std::max(x.hi(), y.hi()));
}

/// Empty optional when the intervals are disjoint.
inline std::optional<Interval> intersect(const Interval& x, const Interval& y) {
  const double lo = std::max(x.lo(), y.lo());
  const double hi = std::min(x.hi(), y.hi());
  if (lo > hi) return std::nullopt;
  return Interval::unchecked(lo, hi);
}

inline Interval sqr(const Interval& x) {
  const double a = x.lo() * x.lo();
  const double b = x.hi() * x.hi();
  if (x.lo() >= 0.0) return Interval::unchecked(rounding::down(a), rounding::up(b));
  if (x.hi() <= 0.0) return Interval::unchecked(rounding::down(b), rounding::up(a));
  return Interval::unchecked(0.0, rounding::up(std::max(a, b)));
}

inline Interval abs(const Interval& x) {
  if (x.lo() >= 0.0) return x;
  if (x.hi() <= 0.0) return -x;
  return Interval::unchecked(0.0, std::max(-x.lo(), x.hi()));
}

Interval sqrt(const Interval& x);
Interval sin(const Interval& x);
Interval cos(const Interval& x);
Interval atan(const Interval& x);
/// Enclosure of the principal angle of (x, y). Evaluated on monotone
/// branches; a box crossing the negative x axis yields [-pi, pi].
Interval atan2(const Interval& y, const Interval& x);

/// Tight enclosure of pi.
inline Interval pi_interval() {
  // M_PI rounds below pi.
  constexpr double pi_lo = 3.141592653589793116;
  return Interval::unchecked(pi_lo, rounding::up(pi_lo));
}

std::ostream& operator<<(std::ostream& os, const Interval& x);

}  // namespace quadineq

namespace Eigen {

template <>
struct NumTraits<quadineq::Interval> : GenericNumTraits<double> {
  using Real = quadineq::Interval;
  using NonInteger = quadineq::Interval;
  using Nested = quadineq::Interval;
  using Literal = quadineq::Interval;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 8,
    MulCost = 16
  };
};

}  // namespace Eigen
