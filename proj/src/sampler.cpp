#include "quadineq/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace quadineq {

double Rng::exponential() {
  // 1 - u lies in (0, 1].
  return -std::log(1.0 - uniform());
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

DiagonalFrame sample_frame(std::uint64_t seed, double margin) {
  if (!(margin >= 0.0 && margin <= 0.2)) throw Error("sample margin must lie in [0, 0.2]");
  Rng rng(seed);
  DiagonalFrame frame;
  for (;;) {
    // Flat Dirichlet via normalized exponentials, then affinely mapped onto
    // the margin-truncated simplex.
    std::array<double, 4> g{};
    double total = 0.0;
    for (double& v : g) total += (v = rng.exponential());
    const double free_mass = 1.0 - 4.0 * margin;
    bool positive = true;
    for (int i = 0; i < 4; ++i) {
      frame.p[i] = margin + free_mass * (g[i] / total);
      positive = positive && frame.p[i] > 0.0;
    }
    frame.w = rng.uniform(margin * std::numbers::pi, (1.0 - margin) * std::numbers::pi);
    if (positive && frame.w > 0.0) return frame;
  }
}

namespace {

Quadrilateral sample_points(std::uint64_t seed, int max_attempts) {
  Rng rng(seed);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::array<Point2d, 4> z;
    for (auto& v : z) v << rng.uniform(), rng.uniform();

    // Order by angle about the centroid; a non-convex set stays non-convex
    // under any ordering and is rejected below.
    const Point2d centre = (z[0] + z[1] + z[2] + z[3]) / 4.0;
    std::array<int, 4> order{0, 1, 2, 3};
    std::array<double, 4> angle{};
    for (int i = 0; i < 4; ++i) angle[i] = std::atan2(z[i](1) - centre(1), z[i](0) - centre(0));
    std::sort(order.begin(), order.end(), [&](int i, int j) { return angle[i] < angle[j]; });
    try {
      return Quadrilateral::from_points({z[order[0]], z[order[1]], z[order[2]], z[order[3]]});
    } catch (const NonConvexError&) {
    } catch (const DuplicatePointsError&) {
    }
  }
  throw RejectionBudgetExceeded("point-rejection sampler exhausted its retry budget");
}

}  // namespace

Quadrilateral sample(std::uint64_t seed, SampleStrategy strategy, double margin, int max_attempts) {
  switch (strategy) {
    case SampleStrategy::frame_uniform:
      return quad_from_frame(sample_frame(seed, margin));
    case SampleStrategy::point_rejection:
      if (!(margin >= 0.0 && margin <= 0.2)) throw Error("sample margin must lie in [0, 0.2]");
      return sample_points(seed, max_attempts);
  }
  throw Error("unknown sample strategy");
}

}  // namespace quadineq
