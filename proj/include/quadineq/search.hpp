#pragma once

#include <cstdint>
#include <vector>

#include "quadineq/geometry.hpp"

namespace quadineq {

/// Normalized residuals below -kCounterexampleThreshold are flagged.
inline constexpr double kCounterexampleThreshold = 1e-12;

struct StartTrajectory {
  DiagonalFrame start;
  DiagonalFrame end;
  double start_value = 0.0;
  double end_value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  /// Best-so-far once the initial simplex is built, then after each iteration
  /// (nonincreasing).
  std::vector<double> best_history;
};

struct CounterexampleCandidate {
  DiagonalFrame frame;
  double normalized_residual = 0.0;
  /// True only when the re-audit at tolerance 1e-9 confirms the violation.
  bool confirmed = false;
};

struct SearchResult {
  std::uint64_t seed = 0;
  int starts = 0;
  double margin = 0.0;
  int budget = 0;
  double best_residual = 0.0;
  DiagonalFrame best_frame;
  std::vector<StartTrajectory> trajectories;
  std::vector<CounterexampleCandidate> candidates;

  bool has_counterexample_candidate() const { return !candidates.empty(); }
};

/// residual / abcdef at a frame (any positive scale).
double normalized_residual(const DiagonalFrame& frame);

/// Clamp-and-renormalize onto {p_i >= margin, sum p = 1} x [margin pi, (1 - margin) pi].
DiagonalFrame project_to_domain(const DiagonalFrame& frame, double margin);

/// Multi-start Nelder-Mead on the normalized residual. Start k draws from
/// derive_seed(seed, k), so the result is independent of scheduling. budget
/// caps objective evaluations per start beyond the start point itself.
SearchResult minimize_residual(std::uint64_t seed, int starts, double margin, int budget);

/// One search per margin, same seed; documents how the minimum moves toward
/// the degenerate boundary.
std::vector<SearchResult> margin_schedule(std::uint64_t seed, int starts, const std::vector<double>& margins,
                                          int budget);

/// True when best residuals strictly decrease along the schedule.
bool schedule_decreasing(const std::vector<SearchResult>& results);

}  // namespace quadineq
