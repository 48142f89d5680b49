#pragma once

#include <cstdint>
#include <random>

#include "quadineq/geometry.hpp"

namespace quadineq {

/// Portable uniform doubles on top of mt19937_64, whose output sequence is
/// fixed by the standard (unlike the std distributions).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Unit-rate exponential variate.
  double exponential();

 private:
  std::mt19937_64 engine_;
};

/// Independent stream seed for (seed, stream), via the splitmix64 finalizer.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

enum class SampleStrategy { frame_uniform, point_rejection };

inline constexpr int kDefaultRejectionAttempts = 10000;

/// Normalized frame uniform on {p_i >= margin, sum p = 1} x [margin pi, (1 - margin) pi].
DiagonalFrame sample_frame(std::uint64_t seed, double margin);

/// Deterministic convex sample. point_rejection draws four points in the unit
/// square until they are in convex position (margin is ignored) and throws
/// RejectionBudgetExceeded after max_attempts draws.
Quadrilateral sample(std::uint64_t seed, SampleStrategy strategy, double margin,
                     int max_attempts = kDefaultRejectionAttempts);

}  // namespace quadineq
