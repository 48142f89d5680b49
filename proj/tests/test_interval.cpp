#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "quadineq/dual.hpp"
#include "quadineq/interval.hpp"
#include "quadineq/sampler.hpp"

using namespace quadineq;

namespace {

using Real = long double;

Interval random_interval(Rng& rng, double lo, double hi) {
  const double a = rng.uniform(lo, hi);
  const double b = rng.uniform(lo, hi);
  return {std::min(a, b), std::max(a, b)};
}

double point_in(Rng& rng, const Interval& x) {
  const double t = rng.uniform();
  // Endpoints themselves are drawn now and then.
  if (t < 0.05) return x.lo();
  if (t > 0.95) return x.hi();
  return std::clamp(x.lo() + t * (x.hi() - x.lo()), x.lo(), x.hi());
}

bool encloses(const Interval& x, Real v) { return x.lo() <= v && v <= x.hi(); }

}  // namespace

TEST_CASE("exact endpoint arithmetic") {
  const Interval s = Interval(1, 2) + Interval(3, 4);
  CHECK(s.contains(Interval(4, 6)));
  CHECK(s.lo() == std::nextafter(4.0, -INFINITY));
  CHECK(s.hi() == std::nextafter(6.0, INFINITY));
  const Interval p = Interval(-1, 2) * Interval(3, 4);
  CHECK(p.contains(Interval(-4, 8)));
  CHECK(p.width() < 12 + 1e-12);
  CHECK((Interval(1, 2) - Interval(3, 4)).contains(Interval(-3, -1)));
  CHECK((Interval(1, 2) / Interval(4, 8)).contains(Interval(0.125, 0.5)));
}

TEST_CASE("division by an interval containing zero") {
  CHECK_THROWS_AS(Interval(1, 1) / Interval(0, 1), DivisionByZeroInterval);
  CHECK_THROWS_AS(Interval(1, 1) / Interval(-1, 1), DivisionByZeroInterval);
}

TEST_CASE("construction and set operations") {
  CHECK_THROWS_AS(Interval(2, 1), Error);
  CHECK_THROWS_AS(Interval(NAN, 1), Error);
  CHECK(hull(Interval(0, 1), Interval(3, 4)) == Interval(0, 4));
  CHECK(intersect(Interval(0, 2), Interval(1, 3)) == Interval(1, 2));
  CHECK_FALSE(intersect(Interval(0, 1), Interval(2, 3)).has_value());
  CHECK(sqr(Interval(-2, 1)).lo() == 0.0);
  CHECK(sqr(Interval(-2, 1)).contains(4.0));
  CHECK(abs(Interval(-3, 1)).contains(Interval(0, 3)));
  CHECK(Interval(-1, 2).contains_zero());
  CHECK(Interval(3).is_point());
  CHECK(pi_interval().contains(static_cast<double>(std::numbers::pi_v<long double>)));
  CHECK(pi_interval().lo() < pi_interval().hi());
}

TEST_CASE("elementary function examples") {
  const double pi = std::numbers::pi;
  const Interval s = sin(Interval(0, pi / 2));
  CHECK(s.contains(Interval(0, 1)));
  CHECK(s.lo() >= -1e-15);
  CHECK(s.hi() == 1.0);
  CHECK(cos(Interval(0, pi)) == Interval(-1, 1));
  const Interval r = sqrt(Interval(4, 9));
  CHECK(r.contains(Interval(2, 3)));
  CHECK(r.width() < 1 + 1e-14);
  CHECK_THROWS_AS(sqrt(Interval(-1, -0.5)), NegativeSqrtDomain);
  CHECK_THROWS_AS(sqrt(Interval(-1, 4)), NegativeSqrtDomain);
  CHECK(sqrt(Interval(-1e-16, 4)).lo() == 0.0);
  CHECK(sin(Interval(0, 10)) == Interval(-1, 1));
}

TEST_CASE("atan2 over the four branches") {
  const double pi = std::numbers::pi;
  CHECK(atan2(Interval(1, 2), Interval(-1, 1)).contains(Interval(std::atan2(1, 1), std::atan2(1, -1))));
  CHECK(atan2(Interval(-2, -1), Interval(-1, 1)).contains(Interval(std::atan2(-1, -1), std::atan2(-1, 1))));
  CHECK(atan2(Interval(-1, 1), Interval(1, 2)).contains(Interval(std::atan2(-1, 1), std::atan2(1, 1))));
  const Interval cut = atan2(Interval(-1, 1), Interval(-2, -1));
  CHECK(cut.contains(Interval(-pi, pi)));
}

TEST_CASE("containment fuzzing of operations against long double evaluation") {
  Rng rng(12345);
  using Unary = std::function<Interval(const Interval&)>;
  using UnaryRef = std::function<Real(Real)>;
  struct UnaryCase {
    const char* name;
    Unary f;
    UnaryRef ref;
    double lo, hi;
  };
  const std::vector<UnaryCase> unary{
      {"sin", [](const Interval& x) { return sin(x); }, [](Real x) { return std::sin(x); }, -10, 10},
      {"cos", [](const Interval& x) { return cos(x); }, [](Real x) { return std::cos(x); }, -10, 10},
      {"sqrt", [](const Interval& x) { return sqrt(x); }, [](Real x) { return std::sqrt(x); }, 0, 50},
      {"atan", [](const Interval& x) { return atan(x); }, [](Real x) { return std::atan(x); }, -50, 50},
      {"sqr", [](const Interval& x) { return sqr(x); }, [](Real x) { return x * x; }, -5, 5},
      {"abs", [](const Interval& x) { return abs(x); }, [](Real x) { return std::fabs(x); }, -5, 5},
  };
  for (const auto& c : unary) {
    CAPTURE(c.name);
    for (int k = 0; k < 20000; ++k) {
      const Interval x = random_interval(rng, c.lo, c.hi);
      const double p = point_in(rng, x);
      CHECK(encloses(c.f(x), c.ref(p)));
    }
  }

  using Binary = std::function<Interval(const Interval&, const Interval&)>;
  using BinaryRef = std::function<Real(Real, Real)>;
  struct BinaryCase {
    const char* name;
    Binary f;
    BinaryRef ref;
  };
  const std::vector<BinaryCase> binary{
      {"+", [](const Interval& x, const Interval& y) { return x + y; }, [](Real x, Real y) { return x + y; }},
      {"-", [](const Interval& x, const Interval& y) { return x - y; }, [](Real x, Real y) { return x - y; }},
      {"*", [](const Interval& x, const Interval& y) { return x * y; }, [](Real x, Real y) { return x * y; }},
      {"atan2", [](const Interval& y, const Interval& x) { return atan2(y, x); },
       [](Real y, Real x) { return std::atan2(y, x); }},
  };
  for (const auto& c : binary) {
    CAPTURE(c.name);
    for (int k = 0; k < 20000; ++k) {
      const Interval x = random_interval(rng, -7, 7);
      const Interval y = random_interval(rng, -7, 7);
      CHECK(encloses(c.f(x, y), c.ref(point_in(rng, x), point_in(rng, y))));
    }
  }
  for (int k = 0; k < 20000; ++k) {
    const Interval x = random_interval(rng, -7, 7);
    const Interval y = random_interval(rng, 0.01, 7);
    const Interval ny = -y;
    CHECK(encloses(x / y, static_cast<Real>(point_in(rng, x)) / point_in(rng, y)));
    CHECK(encloses(x / ny, static_cast<Real>(point_in(rng, x)) / point_in(rng, ny)));
  }
}

TEST_CASE("inclusion monotonicity of the elementary functions") {
  Rng rng(777);
  for (int k = 0; k < 10000; ++k) {
    const Interval outer = random_interval(rng, -6, 6);
    const Interval inner(point_in(rng, outer), outer.hi());
    CHECK(sin(outer).contains(sin(inner)));
    CHECK(cos(outer).contains(cos(inner)));
    CHECK(atan(outer).contains(atan(inner)));
    CHECK(sqr(outer).contains(sqr(inner)));
    const Interval pos = abs(outer) + Interval(0.1);
    const Interval pos_inner(point_in(rng, pos), pos.hi());
    CHECK(sqrt(pos).contains(sqrt(pos_inner)));
    const Interval other = random_interval(rng, -6, 6);
    CHECK((outer * other).contains(inner * other));
    CHECK((other / pos).contains(other / pos_inner));
    CHECK(atan2(pos, outer).contains(atan2(pos_inner, inner)));
  }
}

TEST_CASE("interval dual numbers enclose derivatives") {
  using G = Dual<Interval, 2>;
  Rng rng(3);
  for (int k = 0; k < 2000; ++k) {
    const Interval x = random_interval(rng, 0.5, 2.0);
    const Interval y = random_interval(rng, 0.5, 2.0);
    const G gx = G::variable(x, 0);
    const G gy = G::variable(y, 1);
    const G f = sin(gx) * sqrt(gy) + atan2(gy, gx) / (gx + gy) + square(cos(gx));
    const Real px = point_in(rng, x), py = point_in(rng, y);
    const Real value = std::sin(px) * std::sqrt(py) + std::atan2(py, px) / (px + py) + std::pow(std::cos(px), 2);
    // Partial derivatives written out by hand.
    const Real r2 = px * px + py * py;
    const Real dx = std::cos(px) * std::sqrt(py) + (-py / r2) / (px + py) - std::atan2(py, px) / ((px + py) * (px + py)) -
                    2 * std::cos(px) * std::sin(px);
    const Real dy = std::sin(px) / (2 * std::sqrt(py)) + (px / r2) / (px + py) - std::atan2(py, px) / ((px + py) * (px + py));
    CHECK(encloses(f.value, value));
    CHECK(encloses(f.grad[0], dx));
    CHECK(encloses(f.grad[1], dy));
  }
}

TEST_CASE("double dual numbers give exact first derivatives") {
  using D = Dual<double, 1>;
  const D x = D::variable(0.7, 0);
  const D f = x * x * sin(x);
  CHECK(f.grad[0] == doctest::Approx(2 * 0.7 * std::sin(0.7) + 0.49 * std::cos(0.7)));
}
