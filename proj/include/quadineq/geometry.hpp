#pragma once

#include <Eigen/Core>

#include <array>
#include <cmath>

#include "quadineq/error.hpp"
#include "quadineq/scalar.hpp"

namespace quadineq {

template <class T>
using Point = Eigen::Matrix<T, 2, 1>;
using Point2d = Point<double>;

/// Normalized signed area below which a vertex triple counts as collinear,
/// relative to the squared diameter.
inline constexpr double kCollinearityTolerance = 1e-12;

/// Convex quadrilateral z1..z4 in counterclockwise order.
class Quadrilateral {
 public:
  /// Validates and orients the points. Clockwise input is re-oriented to
  /// (z1, z4, z3, z2); throws DuplicatePointsError or NonConvexError.
  static Quadrilateral from_points(const std::array<Point2d, 4>& z);

  const std::array<Point2d, 4>& vertices() const { return z_; }
  /// Zero-based: vertex(0) is z1.
  const Point2d& vertex(int i) const { return z_[i]; }

  Quadrilateral scaled(double s) const;
  /// (z1, z2, z3, z4) -> (z2, z3, z4, z1).
  Quadrilateral rotated_labels() const;

 private:
  explicit Quadrilateral(const std::array<Point2d, 4>& z) : z_(z) {}
  std::array<Point2d, 4> z_;
};

/// Diagonal-frame parameters: distances p[i] from the diagonal intersection
/// to z_{i+1}, and the angle w between the rays to z1 and z2.
struct DiagonalFrame {
  std::array<double, 4> p{};
  double w = 0.0;

  /// Throws InvalidFrameError unless every p[i] > 0 and 0 < w < pi.
  void validate() const;
  double p_sum() const { return p[0] + p[1] + p[2] + p[3]; }
  /// Same shape rescaled to p-sum 1.
  DiagonalFrame normalized() const;
  bool is_normalized(double tol = 1e-12) const { return std::abs(p_sum() - 1.0) <= tol; }
};

/// Lengths, triangle areas and angles of one configuration.
///
/// a=|z2z3|, b=|z1z3|, c=|z1z2|, d=|z4z1|, e=|z2z4|, f=|z3z4|; b and e are the
/// diagonals. alpha[i]/beta[i] split the interior angle at z_{i+1} along the
/// diagonal through it:
///   alpha1 (c,b)  beta1 (b,d)   alpha2 (a,e)  beta2 (c,e)
///   alpha3 (b,f)  beta3 (a,b)   alpha4 (d,e)  beta4 (e,f)
/// so that A123 = bc sin(alpha1)/2, A124 = ce sin(beta2)/2,
/// A134 = bf sin(alpha3)/2 and A234 = ef sin(beta4)/2.
template <class T>
struct QuadMetrics {
  T a{}, b{}, c{}, d{}, e{}, f{};
  T A123{}, A124{}, A134{}, A234{};
  std::array<T, 4> alpha{}, beta{}, gamma{};
  T X{}, Y{}, W{}, Wp{};

  T length_product() const { return a * b * c * d * e * f; }
};

namespace detail {

template <class T>
T cross2(const Point<T>& u, const Point<T>& v) {
  return u(0) * v(1) - u(1) * v(0);
}

template <class T>
T dot2(const Point<T>& u, const Point<T>& v) {
  return u(0) * v(0) + u(1) * v(1);
}

template <class T>
T distance(const Point<T>& u, const Point<T>& v) {
  using std::sqrt;
  const T dx = u(0) - v(0);
  const T dy = u(1) - v(1);
  return sqrt(dx * dx + dy * dy);
}

/// Angle swept counterclockwise from u to v, for 0 < angle < pi.
template <class T>
T ccw_angle(const Point<T>& u, const Point<T>& v) {
  using std::atan2;
  return atan2(cross2(u, v), dot2(u, v));
}

/// Fills gamma and the X, Y, W, Wp combinations from alpha and beta.
template <class T>
void finish_angles(QuadMetrics<T>& m) {
  for (int i = 0; i < 4; ++i) m.gamma[i] = m.alpha[i] + m.beta[i];
  const T s21 = m.alpha[1] + m.beta[0];
  const T s43 = m.alpha[3] + m.beta[2];
  const T s14 = m.alpha[0] + m.beta[3];
  const T s32 = m.alpha[2] + m.beta[1];
  m.W = T(0.5) * (s21 + s43);
  m.Wp = T(0.5) * (s14 + s32);
  m.X = T(0.5) * (s21 - s43);
  m.Y = T(0.5) * (s14 - s32);
}

}  // namespace detail

/// Metrics from counterclockwise convex vertices, using coordinate vectors only.
template <class T>
QuadMetrics<T> metrics_from_vertices(const std::array<Point<T>, 4>& z) {
  using detail::ccw_angle;
  using detail::cross2;
  using detail::distance;
  const Point<T>& z1 = z[0];
  const Point<T>& z2 = z[1];
  const Point<T>& z3 = z[2];
  const Point<T>& z4 = z[3];

  QuadMetrics<T> m;
  m.a = distance(z2, z3);
  m.b = distance(z1, z3);
  m.c = distance(z1, z2);
  m.d = distance(z4, z1);
  m.e = distance(z2, z4);
  m.f = distance(z3, z4);

  m.A123 = T(0.5) * cross2<T>(z2 - z1, z3 - z1);
  m.A124 = T(0.5) * cross2<T>(z2 - z1, z4 - z1);
  m.A134 = T(0.5) * cross2<T>(z3 - z1, z4 - z1);
  m.A234 = T(0.5) * cross2<T>(z3 - z2, z4 - z2);

  m.alpha[0] = ccw_angle<T>(z2 - z1, z3 - z1);
  m.beta[0] = ccw_angle<T>(z3 - z1, z4 - z1);
  m.beta[1] = ccw_angle<T>(z4 - z2, z1 - z2);
  m.alpha[1] = ccw_angle<T>(z3 - z2, z4 - z2);
  m.beta[2] = ccw_angle<T>(z1 - z3, z2 - z3);
  m.alpha[2] = ccw_angle<T>(z4 - z3, z1 - z3);
  m.alpha[3] = ccw_angle<T>(z1 - z4, z2 - z4);
  m.beta[3] = ccw_angle<T>(z2 - z4, z3 - z4);
  detail::finish_angles(m);
  return m;
}

/// Vertices z1=(p1,0), z2=p2(cos w, sin w), z3=(-p3,0), z4=-p4(cos w, sin w).
template <class T>
std::array<Point<T>, 4> frame_vertices(const std::array<T, 4>& p, const T& w) {
  using std::cos;
  using std::sin;
  const T cw = cos(w);
  const T sw = sin(w);
  std::array<Point<T>, 4> z;
  z[0] << p[0], T(0.0);
  z[1] << p[1] * cw, p[1] * sw;
  z[2] << -p[2], T(0.0);
  z[3] << -(p[3] * cw), -(p[3] * sw);
  return z;
}

/// Metrics straight from frame parameters: law of cosines for the sides,
/// diagonal-split areas, and the angles of the four triangles around the
/// diagonal intersection. Agrees with metrics_from_vertices(frame_vertices)
/// but avoids coordinate round trips, which keeps interval enclosures tight.
template <class T>
QuadMetrics<T> metrics_from_frame(const std::array<T, 4>& p, const T& w) {
  using std::atan2;
  using std::cos;
  using std::sin;
  using std::sqrt;
  const T cw = cos(w);
  const T sw = sin(w);
  const T& p1 = p[0];
  const T& p2 = p[1];
  const T& p3 = p[2];
  const T& p4 = p[3];

  QuadMetrics<T> m;
  m.b = p1 + p3;
  m.e = p2 + p4;
  // Law of cosines as a sum of nonnegative terms.
  const T one_minus = T(1.0) - cw;
  const T one_plus = T(1.0) + cw;
  m.c = sqrt(square(p1 - p2) + T(2.0) * p1 * p2 * one_minus);
  m.a = sqrt(square(p2 - p3) + T(2.0) * p2 * p3 * one_plus);
  m.f = sqrt(square(p3 - p4) + T(2.0) * p3 * p4 * one_minus);
  m.d = sqrt(square(p4 - p1) + T(2.0) * p4 * p1 * one_plus);

  const T half_sw = T(0.5) * sw;
  m.A123 = half_sw * p2 * m.b;
  m.A124 = half_sw * p1 * m.e;
  m.A134 = half_sw * p4 * m.b;
  m.A234 = half_sw * p3 * m.e;

  // Triangle P z1 z2 (angle w at P), P z2 z3 (pi - w), P z3 z4 (w), P z4 z1 (pi - w).
  m.alpha[0] = atan2(p2 * sw, p1 - p2 * cw);
  m.beta[1] = atan2(p1 * sw, p2 - p1 * cw);
  m.alpha[1] = atan2(p3 * sw, p2 + p3 * cw);
  m.beta[2] = atan2(p2 * sw, p3 + p2 * cw);
  m.alpha[2] = atan2(p4 * sw, p3 - p4 * cw);
  m.beta[3] = atan2(p3 * sw, p4 - p3 * cw);
  m.alpha[3] = atan2(p1 * sw, p4 + p1 * cw);
  m.beta[0] = atan2(p4 * sw, p1 + p4 * cw);
  detail::finish_angles(m);
  return m;
}

Quadrilateral quad_from_points(const std::array<Point2d, 4>& z);
/// Throws InvalidFrameError when the frame is invalid.
Quadrilateral quad_from_frame(const DiagonalFrame& frame);
/// Un-normalized frame of q; quad_from_frame(frame_of(q)) equals q up to a rigid motion.
DiagonalFrame frame_of(const Quadrilateral& q);
QuadMetrics<double> metrics(const Quadrilateral& q);

}  // namespace quadineq
