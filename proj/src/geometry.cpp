#include "quadineq/geometry.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <numbers>

namespace quadineq {

namespace {

double squared_diameter(const std::array<Point2d, 4>& z) {
  double diam2 = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) diam2 = std::max(diam2, (z[i] - z[j]).squaredNorm());
  return diam2;
}

}  // namespace

Quadrilateral Quadrilateral::from_points(const std::array<Point2d, 4>& z) {
  for (const auto& v : z)
    if (!v.allFinite()) throw NonConvexError("quadrilateral vertex is not finite");

  const double diam2 = squared_diameter(z);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (diam2 == 0.0 || (z[i] - z[j]).squaredNorm() <= 1e-24 * diam2)
        throw DuplicatePointsError("quadrilateral has coincident vertices");

  int positive = 0;
  int negative = 0;
  for (int i = 0; i < 4; ++i) {
    const Point2d u = z[(i + 1) % 4] - z[i];
    const Point2d v = z[(i + 2) % 4] - z[(i + 1) % 4];
    const double turn = detail::cross2(u, v) / diam2;
    if (turn > kCollinearityTolerance)
      ++positive;
    else if (turn < -kCollinearityTolerance)
      ++negative;
  }
  if (positive == 4) return Quadrilateral(z);
  if (negative == 4) return Quadrilateral({z[0], z[3], z[2], z[1]});
  throw NonConvexError("vertices do not form a strictly convex quadrilateral");
}

Quadrilateral Quadrilateral::scaled(double s) const {
  std::array<Point2d, 4> z = z_;
  for (auto& v : z) v *= s;
  return Quadrilateral::from_points(z);
}

Quadrilateral Quadrilateral::rotated_labels() const { return Quadrilateral({z_[1], z_[2], z_[3], z_[0]}); }

void DiagonalFrame::validate() const {
  for (double v : p)
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidFrameError("frame distances must be positive and finite");
  if (!(w > 0.0 && w < std::numbers::pi)) throw InvalidFrameError("frame angle must lie in (0, pi)");
}

DiagonalFrame DiagonalFrame::normalized() const {
  DiagonalFrame r = *this;
  const double s = p_sum();
  for (double& v : r.p) v /= s;
  return r;
}

Quadrilateral quad_from_points(const std::array<Point2d, 4>& z) { return Quadrilateral::from_points(z); }

Quadrilateral quad_from_frame(const DiagonalFrame& frame) {
  frame.validate();
  return Quadrilateral::from_points(frame_vertices<double>(frame.p, frame.w));
}

DiagonalFrame frame_of(const Quadrilateral& q) {
  const auto& z = q.vertices();
  // z1 + t (z3 - z1) = z2 + s (z4 - z2)
  Eigen::Matrix2d A;
  A.col(0) = z[2] - z[0];
  A.col(1) = z[1] - z[3];
  const Eigen::Vector2d ts = A.partialPivLu().solve(z[1] - z[0]);
  const Point2d P = z[0] + ts(0) * (z[2] - z[0]);

  DiagonalFrame frame;
  for (int i = 0; i < 4; ++i) frame.p[i] = (z[i] - P).norm();
  frame.w = detail::ccw_angle<double>(z[0] - P, z[1] - P);
  return frame;
}

QuadMetrics<double> metrics(const Quadrilateral& q) { return metrics_from_vertices<double>(q.vertices()); }

}  // namespace quadineq
