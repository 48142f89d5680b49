#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

#include "quadineq/geometry.hpp"

// Evaluation kernel for the degree-six quadrilateral inequality
//
//   E12 + E23 + E34 + E41 >= E13 + E24,
//
// where E_ij = (free length) * (two areas on side ij) * (four lengths - 2 len_ij).
// Every formula is templated on the scalar so the same code runs on doubles,
// extended precision, intervals and interval dual numbers.

namespace quadineq {

enum class ResidualPath { edge, expanded, lemma };
enum class TermGroup { X, Y, W };
enum class SumForm { raw, closed };
/// Variant of the sign in front of sin(gamma2) sin(gamma4) in the
/// multiplicity-two scalar expression.
enum class SignVariant { plus, minus };

std::string_view to_string(ResidualPath path);
std::string_view to_string(TermGroup group);
std::string_view to_string(SignVariant sign);

template <class T>
struct EdgeTermSet {
  T e12{}, e23{}, e34{}, e41{}, e13{}, e24{};

  T residual() const { return e12 + e23 + e34 + e41 - e13 - e24; }
};

template <class T>
struct AngularParts {
  T p1_value{};
  T p2_value{};
};

namespace terms {

enum Length : std::uint8_t { a, b, c, d, e, f };
enum Area : std::uint8_t { A123, A124, A134, A234 };

/// One edge expression: sign * free * areas * (sum(plus) - 2 * minus).
struct EdgeExpression {
  int sign;
  Length free;
  std::array<Area, 2> areas;
  std::array<Length, 4> plus;
  Length minus;
};

/// The six edge expressions in the order E12, E23, E34, E41, E13, E24.
inline constexpr std::array<EdgeExpression, 6> kEdgeExpressions{{
    {+1, f, {A123, A124}, {d, e, a, b}, c},
    {+1, d, {A123, A234}, {c, b, e, f}, a},
    {+1, c, {A134, A234}, {d, b, e, a}, f},
    {+1, a, {A124, A134}, {c, e, b, f}, d},
    {-1, e, {A123, A134}, {c, a, d, f}, b},
    {-1, b, {A124, A234}, {c, d, a, f}, e},
}};

/// Lengths a group's explicit length pairs must avoid: X {a,d}, Y {c,f}, W {b,e}.
constexpr std::array<Length, 2> excluded_pair(TermGroup g) {
  switch (g) {
    case TermGroup::X:
      return {a, d};
    case TermGroup::Y:
      return {c, f};
    case TermGroup::W:
      return {b, e};
  }
  return {a, d};
}

constexpr bool in_group(TermGroup g, Length free, Length len) {
  const auto ex = excluded_pair(g);
  return free != ex[0] && free != ex[1] && len != ex[0] && len != ex[1];
}

template <class T>
const T& length(const QuadMetrics<T>& m, Length l) {
  switch (l) {
    case a:
      return m.a;
    case b:
      return m.b;
    case c:
      return m.c;
    case d:
      return m.d;
    case e:
      return m.e;
    case f:
      break;
  }
  return m.f;
}

template <class T>
const T& area(const QuadMetrics<T>& m, Area k) {
  switch (k) {
    case A123:
      return m.A123;
    case A124:
      return m.A124;
    case A134:
      return m.A134;
    case A234:
      break;
  }
  return m.A234;
}

}  // namespace terms

template <class T>
EdgeTermSet<T> edge_terms(const QuadMetrics<T>& m) {
  std::array<T, 6> v;
  for (std::size_t k = 0; k < terms::kEdgeExpressions.size(); ++k) {
    const auto& ex = terms::kEdgeExpressions[k];
    T sum = terms::length(m, ex.plus[0]);
    for (int i = 1; i < 4; ++i) sum += terms::length(m, ex.plus[i]);
    sum -= T(2.0) * terms::length(m, ex.minus);
    v[k] = terms::length(m, ex.free) * terms::area(m, ex.areas[0]) * terms::area(m, ex.areas[1]) * sum;
  }
  return {v[0], v[1], v[2], v[3], v[4], v[5]};
}

/// Sum of the 24 multiplicity-one terms (free * len * areas) of the expanded
/// inequality restricted to one group, straight from the expansion.
template <class T>
T multiplicity_one_raw(const QuadMetrics<T>& m, TermGroup g) {
  T sum(0.0);
  for (const auto& ex : terms::kEdgeExpressions) {
    const T prefix =
        T(double(ex.sign)) * terms::length(m, ex.free) * terms::area(m, ex.areas[0]) * terms::area(m, ex.areas[1]);
    for (terms::Length len : ex.plus)
      if (terms::in_group(g, ex.free, len)) sum += prefix * terms::length(m, len);
  }
  return sum;
}

/// Factored products of the three multiplicity-one groups.
template <class T>
T multiplicity_one_factored(const QuadMetrics<T>& m, TermGroup g) {
  using std::cos;
  using std::sin;
  const T half(0.5);
  const T P = m.length_product();
  switch (g) {
    case TermGroup::X:
      return P * sin(m.X) * sin(half * m.Wp) * sin(half * m.Y) * sin(half * (m.alpha[0] - m.beta[3]));
    case TermGroup::Y:
      return P * sin(m.Y) * sin(half * m.W) * sin(half * m.X) * sin(half * (m.beta[0] - m.alpha[1]));
    case TermGroup::W:
      break;
  }
  return P * sin(m.W) * cos(half * m.X) * cos(half * m.Y) * sin(half * (m.gamma[0] + m.gamma[2]));
}

template <class T>
T multiplicity_one_sum(const QuadMetrics<T>& m, TermGroup g, SumForm form) {
  return form == SumForm::raw ? multiplicity_one_raw(m, g) : multiplicity_one_factored(m, g);
}

/// The six -2 * free * len terms of the expansion, collected as area products.
template <class T>
T multiplicity_two_raw(const QuadMetrics<T>& m) {
  return T(-2.0) * m.a * m.d * (m.A123 * m.A234 + m.A124 * m.A134) -
         T(2.0) * m.c * m.f * (m.A124 * m.A123 + m.A134 * m.A234) +
         T(2.0) * m.b * m.e * (m.A123 * m.A134 + m.A124 * m.A234);
}

/// abcdef/2 * (sum of sine products) after replacing every area with its
/// two-sides-and-angle formula; the sign of the last product is a parameter.
template <class T>
T multiplicity_two_sine_form(const QuadMetrics<T>& m, SignVariant sign) {
  using std::sin;
  const auto& al = m.alpha;
  const auto& be = m.beta;
  const auto& ga = m.gamma;
  const T last = sin(ga[1]) * sin(ga[3]);
  T sum = -(sin(al[0]) * sin(be[3])) - sin(al[2]) * sin(be[1]) - sin(al[3]) * sin(be[2]) -
          sin(al[1]) * sin(be[0]) + sin(ga[0]) * sin(ga[2]);
  sum = sign == SignVariant::plus ? sum + last : sum - last;
  return T(0.5) * m.length_product() * sum;
}

/// P1 and P2, either from their six-cosine definitions or in closed form.
template <class T>
AngularParts<T> angular_parts(const QuadMetrics<T>& m, SumForm form) {
  using std::cos;
  using std::sin;
  const auto& al = m.alpha;
  const auto& be = m.beta;
  const auto& ga = m.gamma;
  const T half(0.5);
  AngularParts<T> r;
  if (form == SumForm::raw) {
    const T quarter(0.25);
    r.p1_value = quarter * (cos(al[0] + be[3]) + cos(al[2] + be[1]) + cos(al[3] + be[2]) + cos(al[1] + be[0]) +
                            cos(ga[0] - ga[2]) + cos(ga[1] - ga[3]));
    r.p2_value = -quarter * (cos(al[0] - be[3]) + cos(al[2] - be[1]) + cos(al[3] - be[2]) + cos(al[1] - be[0]) +
                             cos(ga[0] + ga[2]) + cos(ga[1] + ga[3]));
    return r;
  }
  const T sx = sin(half * m.X);
  const T cx = cos(half * m.X);
  const T sy = sin(half * m.Y);
  const T cy = cos(half * m.Y);
  const T cw = cos(half * m.W);
  const T cwp = cos(half * m.Wp);
  r.p1_value = half - T(2.0) * (sx * sx) * (cw * cw) * (cy * cy) - T(2.0) * (cx * cx) * (cwp * cwp) * (sy * sy);
  r.p2_value = -half - T(2.0) * sin(half * (al[0] - be[3])) * sin(half * (be[0] - al[1])) *
                           sin(half * (ga[0] + ga[2]));
  return r;
}

template <class T>
T multiplicity_two_sum(const QuadMetrics<T>& m, SumForm form) {
  if (form == SumForm::raw) return multiplicity_two_raw(m);
  const AngularParts<T> parts = angular_parts(m, SumForm::closed);
  return m.length_product() * (parts.p1_value + parts.p2_value);
}

/// All 30 terms of the expanded inequality summed one by one.
template <class T>
T expanded_residual(const QuadMetrics<T>& m) {
  T sum(0.0);
  for (const auto& ex : terms::kEdgeExpressions) {
    const T prefix =
        T(double(ex.sign)) * terms::length(m, ex.free) * terms::area(m, ex.areas[0]) * terms::area(m, ex.areas[1]);
    for (terms::Length len : ex.plus) sum += prefix * terms::length(m, len);
    sum += T(-2.0) * prefix * terms::length(m, ex.minus);
  }
  return sum;
}

/// LHS - RHS of the inequality (length^6 units).
template <class T>
T residual(const QuadMetrics<T>& m, ResidualPath path) {
  switch (path) {
    case ResidualPath::edge:
      return edge_terms(m).residual();
    case ResidualPath::expanded:
      return expanded_residual(m);
    case ResidualPath::lemma:
      break;
  }
  return multiplicity_one_factored(m, TermGroup::X) + multiplicity_one_factored(m, TermGroup::Y) +
         multiplicity_one_factored(m, TermGroup::W) + multiplicity_two_sum(m, SumForm::closed);
}

/// Angle triple summing to pi on which the closed form of P2 applies the
/// cosine-sum identity: (beta4 - alpha1, alpha2 - beta1, gamma1 + gamma3).
template <class T>
std::array<T, 3> identity3_angles(const QuadMetrics<T>& m) {
  return {m.beta[3] - m.alpha[0], m.alpha[1] - m.beta[0], m.gamma[0] + m.gamma[2]};
}

/// cos x + cos y + cos z - 1 - 4 sin(x/2) sin(y/2) sin(z/2); zero when x + y + z = pi.
template <class T>
T identity3_defect(const T& x, const T& y, const T& z) {
  using std::cos;
  using std::sin;
  const T half(0.5);
  return cos(x) + cos(y) + cos(z) - T(1.0) - T(4.0) * sin(half * x) * sin(half * y) * sin(half * z);
}

/// Slack of the three angle bounds used to lower-bound the multiplicity-one
/// factors; index is 1, 2 or 3. Nonnegative on convex quadrilaterals.
template <class T>
T corollary1_slack(const QuadMetrics<T>& m, int index) {
  using std::abs;
  using std::sin;
  const T half(0.5);
  switch (index) {
    case 1:
      return sin(half * (m.Wp - m.Y)) - abs(sin(half * (m.alpha[0] - m.beta[3])));
    case 2:
      return sin(half * (m.W - m.X)) - abs(sin(half * (m.beta[0] - m.alpha[1])));
    case 3:
      return sin(half * (m.gamma[0] + m.gamma[2])) - sin(half * (m.X + m.Y));
    default:
      throw Error("corollary index must be 1, 2 or 3");
  }
}

/// gamma2 + gamma3 <= pi and gamma3 + gamma4 <= pi, up to tol.
inline bool theorem2_hypotheses(const QuadMetrics<double>& m, double tol = 1e-12) {
  const double pi = std::numbers::pi;
  return m.gamma[1] + m.gamma[2] <= pi + tol && m.gamma[2] + m.gamma[3] <= pi + tol;
}

/// Dimensionless multiplicity-one closed forms plus (P1 - 1/2).
template <class T>
T theorem2_value(const QuadMetrics<T>& m) {
  const T P = m.length_product();
  const T groups = (multiplicity_one_factored(m, TermGroup::X) + multiplicity_one_factored(m, TermGroup::Y) +
                    multiplicity_one_factored(m, TermGroup::W)) /
                   P;
  return groups + angular_parts(m, SumForm::closed).p1_value - T(0.5);
}

/// Terms left over after lower-bounding the multiplicity-one factors.
template <class T>
T remainder_terms(const QuadMetrics<T>& m) {
  using std::cos;
  using std::sin;
  const T half(0.5);
  const T two(2.0);
  return two * sin(m.X) * sin(half * m.Wp) * sin(half * m.Y) * sin(half * m.alpha[2]) * cos(half * m.beta[1]) +
         two * sin(m.Y) * sin(half * m.W) * sin(half * m.X) * sin(half * m.beta[2]) * cos(half * m.alpha[3]) +
         two * sin(m.W) * cos(half * m.X) * cos(half * m.Y) * cos(half * m.gamma[0]) * sin(half * m.gamma[2]);
}

/// Closing combination: the nonnegative product left by the lower bound, the
/// P2 sine triple, and the third remainder term.
template <class T>
T final_chain_slack(const QuadMetrics<T>& m) {
  using std::cos;
  using std::sin;
  const T half(0.5);
  const T two(2.0);
  const T product = two * sin(half * (m.Wp - m.Y)) * sin(half * (m.W - m.X)) * sin(half * (m.X + m.Y));
  const T triple = two * sin(half * (m.beta[3] - m.alpha[0])) * sin(half * (m.alpha[1] - m.beta[0])) *
                   sin(half * (m.gamma[2] + m.gamma[0]));
  const T third = two * sin(m.W) * cos(half * m.X) * cos(half * m.Y) * cos(half * m.gamma[0]) * sin(half * m.gamma[2]);
  return product - triple + third;
}

}  // namespace quadineq
