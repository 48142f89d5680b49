#pragma once

#include <array>

#include "quadineq/dual.hpp"
#include "quadineq/geometry.hpp"
#include "quadineq/interval.hpp"
#include "quadineq/kernel.hpp"

namespace quadineq {

/// Box of normalized diagonal-frame parameters.
///
/// p1, p2, p3 and w are free; p4 is eliminated through the gauge
/// p4 = 1 - p1 - p2 - p3, and the stored p[3] only clips that value.
struct FrameBox {
  std::array<Interval, 4> p;
  Interval w;

  /// Box with p4 left to the gauge (clip [0, 1]).
  static FrameBox from_free(const Interval& p1, const Interval& p2, const Interval& p3, const Interval& w);
  /// Degenerate box at a frame; the frame is normalized first.
  static FrameBox at(const DiagonalFrame& frame);

  /// Enclosure of 1 - p1 - p2 - p3 over the free box, unclipped.
  Interval gauge_p4() const;
  /// gauge_p4() intersected with the clip; throws IndeterminateRegion when the
  /// box misses the simplex.
  Interval effective_p4() const;
  /// True when the box provably misses {p4 >= clip.lo}.
  bool misses_simplex() const;

  std::array<double, 4> free_mid() const { return {p[0].mid(), p[1].mid(), p[2].mid(), w.mid()}; }
};

enum class EnclosureForm { natural, mean_value };

/// Throws IndeterminateRegion unless every parameter interval of the box is
/// positive and w lies inside (0, pi).
void check_box(const FrameBox& box);

/// Interval metrics over the box (natural extension). Throws
/// IndeterminateRegion when a length or parameter interval touches zero.
QuadMetrics<Interval> metrics_enclosure(const FrameBox& box);

/// Enclosure of the raw residual (length^6, gauge p-sum 1) over the box.
///
/// The natural form is inclusion monotone. The mean-value form
/// f(mid) + grad(box) . (box - mid) converges quadratically with the box
/// width but is not inclusion monotone; it falls back to the natural form
/// when the unclipped gauge leaves the positive orthant.
Interval residual_enclosure(const FrameBox& box, ResidualPath path, EnclosureForm form = EnclosureForm::natural);

/// Intersection of the natural and mean-value enclosures on both the edge
/// and lemma paths; what the certifier records for each box.
Interval certified_residual_enclosure(const FrameBox& box);

/// Lower bound of the residual over the box, staged from cheap to expensive
/// and stopping once the bound is positive and at least `target`: the edge
/// path in natural and mean-value form with faces of monotonicity collapsed,
/// then a second-order Taylor form, then certified_residual_enclosure.
/// Throws IndeterminateRegion when the box is degenerate.
double certified_lower_bound(const FrameBox& box, double target);

}  // namespace quadineq
