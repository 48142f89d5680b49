#include "quadineq/interval.hpp"

#include <numbers>

namespace quadineq {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kTranscendentalUlps = 2;

// True when some phase + 2*pi*k lies in x. Errs toward true near the edges,
// which only widens the caller's result.
bool contains_phase(const Interval& x, double phase) {
  const double eps = 1e-12 * std::max({1.0, std::abs(x.lo()), std::abs(x.hi())});
  const double k0 = std::floor((x.lo() - phase) / kTwoPi) - 1.0;
  for (int i = 0; i < 4; ++i) {
    const double t = phase + (k0 + i) * kTwoPi;
    if (t >= x.lo() - eps && t <= x.hi() + eps) return true;
  }
  return false;
}

Interval clamp_unit(double lo, double hi) {
  return Interval::unchecked(std::max(lo, -1.0), std::min(hi, 1.0));
}

Interval half_pi_interval() {
  const Interval p = pi_interval();
  return Interval::unchecked(p.lo() * 0.5, p.hi() * 0.5);
}

}  // namespace

Interval sqrt(const Interval& x) {
  if (x.hi() < 0.0 || x.lo() < -1e-14) throw NegativeSqrtDomain("sqrt of an interval with negative part");
  const double lo = x.lo() <= 0.0 ? 0.0 : std::max(0.0, rounding::down(std::sqrt(x.lo())));
  return Interval::unchecked(lo, rounding::up(std::sqrt(x.hi())));
}

Interval sin(const Interval& x) {
  if (!std::isfinite(x.lo()) || !std::isfinite(x.hi()) || x.width() >= kTwoPi) return {-1.0, 1.0};
  const double a = std::sin(x.lo());
  const double b = std::sin(x.hi());
  double lo = rounding::down(std::min(a, b), kTranscendentalUlps);
  double hi = rounding::up(std::max(a, b), kTranscendentalUlps);
  if (contains_phase(x, 0.5 * std::numbers::pi)) hi = 1.0;
  if (contains_phase(x, -0.5 * std::numbers::pi)) lo = -1.0;
  return clamp_unit(lo, hi);
}

Interval cos(const Interval& x) {
  if (!std::isfinite(x.lo()) || !std::isfinite(x.hi()) || x.width() >= kTwoPi) return {-1.0, 1.0};
  const double a = std::cos(x.lo());
  const double b = std::cos(x.hi());
  double lo = rounding::down(std::min(a, b), kTranscendentalUlps);
  double hi = rounding::up(std::max(a, b), kTranscendentalUlps);
  if (contains_phase(x, 0.0)) hi = 1.0;
  if (contains_phase(x, std::numbers::pi)) lo = -1.0;
  return clamp_unit(lo, hi);
}

Interval atan(const Interval& x) {
  const double bound = half_pi_interval().hi();
  const double lo = rounding::down(std::atan(x.lo()), kTranscendentalUlps);
  const double hi = rounding::up(std::atan(x.hi()), kTranscendentalUlps);
  return Interval::unchecked(std::max(lo, -bound), std::min(hi, bound));
}

Interval atan2(const Interval& y, const Interval& x) {
  const Interval pi = pi_interval();
  Interval r;
  if (y.lo() > 0.0) {
    r = half_pi_interval() - atan(x / y);
  } else if (y.hi() < 0.0) {
    r = -half_pi_interval() - atan(x / y);
  } else if (x.lo() > 0.0) {
    r = atan(y / x);
  } else {
    // Straddles the branch cut or contains the origin.
    return Interval::unchecked(-pi.hi(), pi.hi());
  }
  return Interval::unchecked(std::max(r.lo(), -pi.hi()), std::min(r.hi(), pi.hi()));
}

std::ostream& operator<<(std::ostream& os, const Interval& x) {
  const auto prec = os.precision(17);
  os << '[' << x.lo() << ", " << x.hi() << ']';
  os.precision(prec);
  return os;
}

}  // namespace quadineq
