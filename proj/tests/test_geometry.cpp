#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracle.hpp"
#include "quadineq/geometry.hpp"
#include "quadineq/sampler.hpp"

using namespace quadineq;

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);
const double kSqrt5 = std::sqrt(5.0);

Quadrilateral unit_square() { return quad_from_points({Point2d(0, 0), Point2d(1, 0), Point2d(1, 1), Point2d(0, 1)}); }
Quadrilateral rectangle() { return quad_from_points({Point2d(0, 0), Point2d(2, 0), Point2d(2, 1), Point2d(0, 1)}); }

std::array<double, 6> lengths(const QuadMetrics<double>& m) { return {m.a, m.b, m.c, m.d, m.e, m.f}; }
std::array<double, 4> areas(const QuadMetrics<double>& m) { return {m.A123, m.A124, m.A134, m.A234}; }

void check_same_metrics(const QuadMetrics<double>& x, const QuadMetrics<double>& y, double tol) {
  for (int i = 0; i < 6; ++i) CHECK(lengths(x)[i] == doctest::Approx(lengths(y)[i]).epsilon(tol));
  for (int i = 0; i < 4; ++i) {
    CHECK(areas(x)[i] == doctest::Approx(areas(y)[i]).epsilon(tol));
    CHECK(std::abs(x.alpha[i] - y.alpha[i]) <= 1e-10);
    CHECK(std::abs(x.beta[i] - y.beta[i]) <= 1e-10);
  }
}

// The type invariants: triangle areas from two sides and the included angle,
// angle sums, and the two expressions for W, W', X, Y.
void check_invariants(const QuadMetrics<double>& m) {
  const double P = std::max({m.a, m.b, m.c, m.d, m.e, m.f});
  const double area_scale = P * P;
  CHECK(std::abs(m.A123 - 0.5 * m.b * m.c * std::sin(m.alpha[0])) <= 1e-12 * area_scale);
  CHECK(std::abs(m.A124 - 0.5 * m.c * m.e * std::sin(m.beta[1])) <= 1e-12 * area_scale);
  CHECK(std::abs(m.A134 - 0.5 * m.b * m.f * std::sin(m.alpha[2])) <= 1e-12 * area_scale);
  CHECK(std::abs(m.A234 - 0.5 * m.e * m.f * std::sin(m.beta[3])) <= 1e-12 * area_scale);
  CHECK(std::abs(m.A123 + m.A134 - m.A124 - m.A234) <= 1e-12 * area_scale);
  CHECK(std::abs(m.gamma[0] + m.gamma[1] + m.gamma[2] + m.gamma[3] - 2 * kPi) <= 1e-12);
  CHECK(std::abs((m.alpha[1] + m.beta[2]) - (m.alpha[3] + m.beta[0])) <= 1e-10);
  CHECK(std::abs((m.alpha[0] + m.beta[1]) - (m.alpha[2] + m.beta[3])) <= 1e-10);
  CHECK(std::abs(m.X - (m.beta[0] - m.beta[2])) <= 1e-10);
  CHECK(std::abs(m.Y - (m.alpha[0] - m.alpha[2])) <= 1e-10);
  CHECK(std::abs(m.W - (m.alpha[1] + m.beta[2])) <= 1e-10);
  CHECK(std::abs(m.Wp - (m.alpha[0] + m.beta[1])) <= 1e-10);
}

}  // namespace

TEST_CASE("unit square is accepted and keeps its order") {
  const Quadrilateral q = unit_square();
  CHECK(q.vertex(0) == Point2d(0, 0));
  CHECK(q.vertex(2) == Point2d(1, 1));
}

TEST_CASE("collinear triple is rejected") {
  CHECK_THROWS_AS(quad_from_points({Point2d(0, 0), Point2d(1, 1), Point2d(2, 2), Point2d(0, 1)}), NonConvexError);
}

TEST_CASE("reflex and duplicate inputs are rejected") {
  CHECK_THROWS_AS(quad_from_points({Point2d(0, 0), Point2d(2, 0), Point2d(0.5, 0.5), Point2d(0, 2)}), NonConvexError);
  CHECK_THROWS_AS(quad_from_points({Point2d(0, 0), Point2d(0, 0), Point2d(1, 1), Point2d(0, 1)}), DuplicatePointsError);
  CHECK_THROWS_AS(quad_from_points({Point2d(0, 0), Point2d(1, 0), Point2d(0, 1), Point2d(1, 1)}), NonConvexError);
}

TEST_CASE("clockwise square is re-oriented with identical metrics") {
  const Quadrilateral cw = quad_from_points({Point2d(0, 0), Point2d(0, 1), Point2d(1, 1), Point2d(1, 0)});
  CHECK(cw.vertex(0) == Point2d(0, 0));
  CHECK(cw.vertex(1) == Point2d(1, 0));
  check_same_metrics(metrics(cw), metrics(unit_square()), 1e-15);
}

TEST_CASE("unit square metrics") {
  const auto m = metrics(unit_square());
  CHECK(m.a == doctest::Approx(1.0));
  CHECK(m.c == doctest::Approx(1.0));
  CHECK(m.d == doctest::Approx(1.0));
  CHECK(m.f == doctest::Approx(1.0));
  CHECK(m.b == doctest::Approx(kSqrt2));
  CHECK(m.e == doctest::Approx(kSqrt2));
  for (double A : areas(m)) CHECK(A == doctest::Approx(0.5));
  for (int i = 0; i < 4; ++i) {
    CHECK(m.alpha[i] == doctest::Approx(kPi / 4));
    CHECK(m.beta[i] == doctest::Approx(kPi / 4));
    CHECK(m.gamma[i] == doctest::Approx(kPi / 2));
  }
  CHECK(m.W == doctest::Approx(kPi / 2));
  CHECK(m.Wp == doctest::Approx(kPi / 2));
  CHECK(std::abs(m.X) < 1e-15);
  CHECK(std::abs(m.Y) < 1e-15);
}

TEST_CASE("2x1 rectangle metrics") {
  const auto m = metrics(rectangle());
  CHECK(m.a == doctest::Approx(1.0));
  CHECK(m.d == doctest::Approx(1.0));
  CHECK(m.c == doctest::Approx(2.0));
  CHECK(m.f == doctest::Approx(2.0));
  CHECK(m.b == doctest::Approx(kSqrt5));
  CHECK(m.e == doctest::Approx(kSqrt5));
  for (double A : areas(m)) CHECK(A == doctest::Approx(1.0));
  CHECK(std::abs(m.X) < 1e-15);
  CHECK(std::abs(m.Y) < 1e-15);
  CHECK(m.W == doctest::Approx(std::acos(-0.6)));
}

TEST_CASE("metrics agree with the coordinate oracle") {
  for (std::uint64_t k = 0; k < 2000; ++k) {
    const auto strategy = k % 2 ? SampleStrategy::point_rejection : SampleStrategy::frame_uniform;
    const Quadrilateral q = sample(derive_seed(17, k), strategy, 0.01);
    const auto m = metrics(q);
    const auto o = oracle::evaluate(q);
    const std::array<oracle::Real, 6> ol{o.a, o.b, o.c, o.d, o.e, o.f};
    const std::array<oracle::Real, 4> oa{o.A123, o.A124, o.A134, o.A234};
    for (int i = 0; i < 6; ++i) CHECK(std::abs(lengths(m)[i] - ol[i]) <= 1e-12 * ol[i]);
    for (int i = 0; i < 4; ++i) {
      CHECK(std::abs(areas(m)[i] - oa[i]) <= 1e-12 * (o.b * o.e));
      // acos loses accuracy near 0 and pi; 1e-7 is still far below any convention slip.
      CHECK(std::abs(m.alpha[i] - o.alpha[i]) <= 1e-7);
      CHECK(std::abs(m.beta[i] - o.beta[i]) <= 1e-7);
    }
    check_invariants(m);
  }
}

TEST_CASE("scale equivariance") {
  const Quadrilateral q = sample(derive_seed(3, 1), SampleStrategy::frame_uniform, 0.05);
  const auto m = metrics(q);
  for (double s : {0.5, 3.0}) {
    const auto ms = metrics(q.scaled(s));
    for (int i = 0; i < 6; ++i) CHECK(lengths(ms)[i] == doctest::Approx(s * lengths(m)[i]).epsilon(1e-12));
    for (int i = 0; i < 4; ++i) {
      CHECK(areas(ms)[i] == doctest::Approx(s * s * areas(m)[i]).epsilon(1e-12));
      CHECK(std::abs(ms.alpha[i] - m.alpha[i]) <= 1e-12);
      CHECK(std::abs(ms.beta[i] - m.beta[i]) <= 1e-12);
    }
  }
}

TEST_CASE("cyclic relabeling permutes the metrics") {
  for (std::uint64_t k = 0; k < 200; ++k) {
    const Quadrilateral q = sample(derive_seed(5, k), SampleStrategy::frame_uniform, 0.01);
    const auto m = metrics(q);
    const auto r = metrics(q.rotated_labels());
    // (a, b, c, d, e, f) -> (f, e, a, c, b, d)
    CHECK(r.a == doctest::Approx(m.f).epsilon(1e-12));
    CHECK(r.b == doctest::Approx(m.e).epsilon(1e-12));
    CHECK(r.c == doctest::Approx(m.a).epsilon(1e-12));
    CHECK(r.d == doctest::Approx(m.c).epsilon(1e-12));
    CHECK(r.e == doctest::Approx(m.b).epsilon(1e-12));
    CHECK(r.f == doctest::Approx(m.d).epsilon(1e-12));
    CHECK(r.A123 == doctest::Approx(m.A234).epsilon(1e-12));
    CHECK(r.A124 == doctest::Approx(m.A123).epsilon(1e-12));
    CHECK(r.A134 == doctest::Approx(m.A124).epsilon(1e-12));
    CHECK(r.A234 == doctest::Approx(m.A134).epsilon(1e-12));
    for (int i = 0; i < 4; ++i) {
      CHECK(std::abs(r.alpha[i] - m.alpha[(i + 1) % 4]) <= 1e-10);
      CHECK(std::abs(r.beta[i] - m.beta[(i + 1) % 4]) <= 1e-10);
    }
  }
}

TEST_CASE("frame with equal distances and a right angle is a unit square") {
  const double s = kSqrt2 / 2;
  const Quadrilateral q = quad_from_frame({{s, s, s, s}, kPi / 2});
  check_same_metrics(metrics(q), metrics(unit_square()), 1e-12);
}

TEST_CASE("frame validation") {
  CHECK_THROWS_AS(quad_from_frame({{0.0, 1, 1, 1}, 1.0}), InvalidFrameError);
  CHECK_THROWS_AS(quad_from_frame({{1, 1, 1, 1}, 0.0}), InvalidFrameError);
  CHECK_THROWS_AS(quad_from_frame({{1, 1, 1, 1}, kPi}), InvalidFrameError);
  CHECK_THROWS_AS(quad_from_frame({{1, -1, 1, 1}, 1.0}), InvalidFrameError);
  CHECK_NOTHROW(quad_from_frame({{1e-9, 1, 1, 1}, 1.0}));
}

TEST_CASE("rhombus frame has W equal to the frame angle") {
  const Quadrilateral q = quad_from_frame({{1, 1, 1, 1}, kPi / 3});
  const auto m = metrics(q);
  CHECK(m.W == doctest::Approx(kPi / 3).epsilon(1e-12));
  // Angle z1 P z2 recomputed from the reconstructed coordinates.
  const Point2d z1 = q.vertex(0), z2 = q.vertex(1);
  CHECK(std::atan2(z1(0) * z2(1) - z1(1) * z2(0), z1.dot(z2)) == doctest::Approx(kPi / 3).epsilon(1e-12));
}

TEST_CASE("frame_of the unit square and the rectangle") {
  const DiagonalFrame fs = frame_of(unit_square());
  for (double p : fs.p) CHECK(p == doctest::Approx(kSqrt2 / 2).epsilon(1e-14));
  CHECK(fs.w == doctest::Approx(kPi / 2).epsilon(1e-14));
  const DiagonalFrame fr = frame_of(rectangle());
  for (double p : fr.p) CHECK(p == doctest::Approx(kSqrt5 / 2).epsilon(1e-14));
  CHECK(fr.w == doctest::Approx(std::acos(-0.6)).epsilon(1e-14));
}

TEST_CASE("frame_of inverts quad_from_frame on normalized frames") {
  for (std::uint64_t k = 0; k < 2000; ++k) {
    const DiagonalFrame f = sample_frame(derive_seed(11, k), 0.01);
    const DiagonalFrame g = frame_of(quad_from_frame(f)).normalized();
    for (int i = 0; i < 4; ++i) CHECK(std::abs(g.p[i] - f.p[i]) <= 1e-10);
    CHECK(std::abs(g.w - f.w) <= 1e-10);
  }
}

TEST_CASE("normalization") {
  const DiagonalFrame f{{1, 2, 3, 4}, 1.0};
  const DiagonalFrame n = f.normalized();
  CHECK(n.is_normalized());
  CHECK(n.p[3] == doctest::Approx(0.4));
  CHECK_FALSE(f.is_normalized());
}

TEST_CASE("sampler determinism and bounds") {
  const Quadrilateral a = sample(42, SampleStrategy::frame_uniform, 0.1);
  const Quadrilateral b = sample(42, SampleStrategy::frame_uniform, 0.1);
  CHECK(a.vertices() == b.vertices());
  CHECK(sample(42, SampleStrategy::point_rejection, 0).vertices() ==
        sample(42, SampleStrategy::point_rejection, 0).vertices());
  CHECK(derive_seed(1, 2) != derive_seed(1, 3));
  CHECK(derive_seed(1, 2) != derive_seed(2, 2));

  for (std::uint64_t k = 0; k < 10000; ++k) {
    const DiagonalFrame f = sample_frame(derive_seed(99, k), 0.1);
    CHECK(f.is_normalized());
    for (double p : f.p) CHECK(p >= 0.1 - 1e-15);
    CHECK(f.w >= 0.1 * kPi);
    CHECK(f.w <= 0.9 * kPi);
  }
}

TEST_CASE("point-rejection sampler yields strictly convex quadrilaterals") {
  for (std::uint64_t k = 0; k < 10000; ++k) {
    const Quadrilateral q = sample(derive_seed(7, k), SampleStrategy::point_rejection, 0.0);
    // from_points re-validates convexity and counterclockwise order.
    CHECK_NOTHROW(quad_from_points(q.vertices()));
    CHECK(quad_from_points(q.vertices()).vertices() == q.vertices());
  }
}

TEST_CASE("point-rejection budget") {
  CHECK_THROWS_AS(sample(1, SampleStrategy::point_rejection, 0.0, 0), RejectionBudgetExceeded);
  CHECK_THROWS_AS(sample(1, SampleStrategy::frame_uniform, 0.3), Error);
}
