#include "quadineq/enclosure.hpp"

#include <algorithm>
#include <optional>

namespace quadineq {

namespace {

using Grad = Dual<Interval, 4>;
using Hess = Dual<Grad, 4>;

void require_positive(const Interval& x, const char* what) {
  if (!(x.lo() > 0.0)) throw IndeterminateRegion(std::string("interval ") + what + " touches zero");
}

template <class T>
void require_nondegenerate(const QuadMetrics<T>& m) {
  auto value = [](const T& x) -> const Interval& {
    if constexpr (std::is_same_v<T, Interval>)
      return x;
    else
      return x.value;
  };
  for (const T* len : {&m.a, &m.b, &m.c, &m.d, &m.e, &m.f}) require_positive(value(*len), "length");
}

// Every edge term carries A * A' with each area equal to sin(w)/2 times a
// parameter times a diagonal, and after that the two diagonals b and e factor
// out of the whole sum. What is left is this core; the residual is
// sin(w)^2 / 4 * b * e * core. Working with the core removes most of the
// repeated occurrences of w and the diagonals.
template <class T>
T edge_core(const std::array<T, 4>& p, const T& w) {
  using std::cos;
  using std::sqrt;
  const T& p1 = p[0];
  const T& p2 = p[1];
  const T& p3 = p[2];
  const T& p4 = p[3];
  const T cw = cos(w);
  const T one_minus = T(1.0) - cw;
  const T one_plus = T(1.0) + cw;
  const T two(2.0);
  const T b = p1 + p3;
  const T e = p2 + p4;
  const T c = sqrt(square(p1 - p2) + two * p1 * p2 * one_minus);
  const T a = sqrt(square(p2 - p3) + two * p2 * p3 * one_plus);
  const T f = sqrt(square(p3 - p4) + two * p3 * p4 * one_minus);
  const T d = sqrt(square(p4 - p1) + two * p4 * p1 * one_plus);
  return f * p1 * p2 * (d + e + a + b - two * c) + d * p2 * p3 * (c + b + e + f - two * a) +
         c * p3 * p4 * (d + b + e + a - two * f) + a * p1 * p4 * (c + e + b + f - two * d) -
         b * p2 * p4 * (c + a + d + f - two * b) - e * p1 * p3 * (c + d + a + f - two * e);
}

std::array<Interval, 4> free_dims(const FrameBox& box) { return {box.p[0], box.p[1], box.p[2], box.w}; }

bool has_gauge_gradient(const FrameBox& box) { return box.gauge_p4().lo() > 0.0; }

/// sin(w)^2 / 4 * b * e over the clipped box.
Interval edge_prefactor(const FrameBox& box) {
  const Interval p4 = box.effective_p4();
  return Interval(0.25) * square(sin(box.w)) * (box.p[0] + box.p[2]) * (box.p[1] + p4);
}

Interval edge_core_natural(const FrameBox& box) {
  return edge_core<Interval>({box.p[0], box.p[1], box.p[2], box.effective_p4()}, box.w);
}

Interval edge_core_at_mid(const std::array<double, 4>& c) {
  const Interval c1(c[0]), c2(c[1]), c3(c[2]);
  return edge_core<Interval>({c1, c2, c3, Interval(1.0) - c1 - c2 - c3}, Interval(c[3]));
}

/// Core and its gradient over the unclipped box; needs has_gauge_gradient.
Grad edge_core_gradient(const FrameBox& box) {
  const auto x = free_dims(box);
  const Grad g1 = Grad::variable(x[0], 0);
  const Grad g2 = Grad::variable(x[1], 1);
  const Grad g3 = Grad::variable(x[2], 2);
  return edge_core<Grad>({g1, g2, g3, Grad(1.0) - g1 - g2 - g3}, Grad::variable(x[3], 3));
}

Interval edge_core_mean_value(const FrameBox& box, const Grad& g) {
  const auto x = free_dims(box);
  const auto c = box.free_mid();
  Interval r = edge_core_at_mid(c);
  for (int i = 0; i < 4; ++i) r += g.grad[i] * (x[i] - Interval(c[i]));
  return r;
}

/// Second-order Taylor form: value and gradient at the midpoint, Hessian
/// enclosed over the box.
Interval edge_core_taylor(const FrameBox& box) {
  const auto x = free_dims(box);
  const auto c = box.free_mid();
  std::array<Grad, 4> at_mid;
  std::array<Hess, 4> over_box;
  for (int i = 0; i < 4; ++i) {
    at_mid[i] = Grad::variable(Interval(c[i]), i);
    over_box[i] = Hess(Grad::variable(x[i], i));
    over_box[i].grad[i] = Grad(1.0);
  }
  const Grad g = edge_core<Grad>({at_mid[0], at_mid[1], at_mid[2], Grad(1.0) - at_mid[0] - at_mid[1] - at_mid[2]},
                                 at_mid[3]);
  const Hess h = edge_core<Hess>(
      {over_box[0], over_box[1], over_box[2], Hess(1.0) - over_box[0] - over_box[1] - over_box[2]}, over_box[3]);
  std::array<Interval, 4> dx;
  for (int i = 0; i < 4; ++i) dx[i] = x[i] - Interval(c[i]);
  Interval r = g.value;
  for (int i = 0; i < 4; ++i) {
    r += g.grad[i] * dx[i];
    r += Interval(0.5) * h.grad[i].grad[i] * sqr(dx[i]);
    for (int j = i + 1; j < 4; ++j) r += h.grad[i].grad[j] * dx[i] * dx[j];
  }
  return r;
}

Interval tighten(const Interval& x, const Interval& y) {
  const auto r = intersect(x, y);
  if (!r) throw Error("disjoint residual enclosures: enclosure arithmetic is unsound");
  return *r;
}

/// Core enclosure from the natural and, when available, mean-value forms.
Interval edge_core_enclosure(const FrameBox& box, EnclosureForm form) {
  Interval core = edge_core_natural(box);
  if (form == EnclosureForm::mean_value && has_gauge_gradient(box)) {
    try {
      core = tighten(core, edge_core_mean_value(box, edge_core_gradient(box)));
    } catch (const DivisionByZeroInterval&) {
    }
  }
  return core;
}

Interval lemma_mean_value(const FrameBox& box) {
  const auto x = free_dims(box);
  const Grad g1 = Grad::variable(x[0], 0);
  const Grad g2 = Grad::variable(x[1], 1);
  const Grad g3 = Grad::variable(x[2], 2);
  const QuadMetrics<Grad> gm = metrics_from_frame<Grad>({g1, g2, g3, Grad(1.0) - g1 - g2 - g3}, Grad::variable(x[3], 3));
  require_nondegenerate(gm);
  const Grad gr = residual(gm, ResidualPath::lemma);

  const auto c = box.free_mid();
  const Interval c1(c[0]), c2(c[1]), c3(c[2]);
  const QuadMetrics<Interval> cm = metrics_from_frame<Interval>({c1, c2, c3, Interval(1.0) - c1 - c2 - c3}, c[3]);
  require_nondegenerate(cm);
  Interval r = residual(cm, ResidualPath::lemma);
  for (int i = 0; i < 4; ++i) r += gr.grad[i] * (x[i] - Interval(c[i]));
  return r;
}

/// Product bound prefactor * core for a core known only from below.
double scaled_lower_bound(const Interval& prefactor, double core_lo) { return (prefactor * Interval(core_lo)).lo(); }

}  // namespace

FrameBox FrameBox::from_free(const Interval& p1, const Interval& p2, const Interval& p3, const Interval& w) {
  FrameBox box;
  box.p = {p1, p2, p3, Interval(0.0, 1.0)};
  box.w = w;
  return box;
}

FrameBox FrameBox::at(const DiagonalFrame& frame) {
  const DiagonalFrame n = frame.normalized();
  return from_free(n.p[0], n.p[1], n.p[2], n.w);
}

Interval FrameBox::gauge_p4() const { return Interval(1.0) - p[0] - p[1] - p[2]; }

bool FrameBox::misses_simplex() const { return !intersect(gauge_p4(), p[3]).has_value(); }

Interval FrameBox::effective_p4() const {
  const auto p4 = intersect(gauge_p4(), p[3]);
  if (!p4) throw IndeterminateRegion("frame box does not meet the normalized simplex");
  return *p4;
}

void check_box(const FrameBox& box) {
  const Interval p4 = box.effective_p4();
  for (int i = 0; i < 3; ++i) require_positive(box.p[i], "p");
  require_positive(p4, "p4");
  if (!(box.w.lo() > 0.0 && box.w.hi() < pi_interval().lo()))
    throw IndeterminateRegion("frame angle interval leaves (0, pi)");
}

QuadMetrics<Interval> metrics_enclosure(const FrameBox& box) {
  check_box(box);
  const Interval p4 = box.effective_p4();
  QuadMetrics<Interval> m = metrics_from_frame<Interval>({box.p[0], box.p[1], box.p[2], p4}, box.w);
  require_nondegenerate(m);
  return m;
}

Interval residual_enclosure(const FrameBox& box, ResidualPath path, EnclosureForm form) {
  if (path == ResidualPath::edge) {
    check_box(box);
    return edge_prefactor(box) * edge_core_enclosure(box, form);
  }
  if (path != ResidualPath::lemma) throw Error("enclosures are formed on the edge and lemma paths only");
  Interval r = residual(metrics_enclosure(box), path);
  if (form == EnclosureForm::mean_value && has_gauge_gradient(box)) {
    try {
      r = tighten(r, lemma_mean_value(box));
    } catch (const DivisionByZeroInterval&) {
    } catch (const IndeterminateRegion&) {
    }
  }
  return r;
}

Interval certified_residual_enclosure(const FrameBox& box) {
  Interval r = residual_enclosure(box, ResidualPath::edge, EnclosureForm::mean_value);
  try {
    r = tighten(r, residual_enclosure(box, ResidualPath::lemma, EnclosureForm::mean_value));
  } catch (const DivisionByZeroInterval&) {
  }
  return r;
}

double certified_lower_bound(const FrameBox& box, double target) {
  auto clears = [target](double lb) { return lb >= target && lb > 0.0; };
  check_box(box);
  const Interval prefactor = edge_prefactor(box);
  double core_lo = edge_core_natural(box).lo();
  FrameBox face = box;
  if (has_gauge_gradient(box)) {
    try {
      const Grad g = edge_core_gradient(box);
      core_lo = std::max(core_lo, edge_core_mean_value(box, g).lo());
      // A sign-definite partial derivative puts the minimum of the core on one face.
      bool reduced = false;
      for (int i = 0; i < 4; ++i) {
        Interval& dim = i < 3 ? face.p[i] : face.w;
        if (dim.is_point()) continue;
        if (g.grad[i].lo() >= 0.0 || g.grad[i].hi() <= 0.0) {
          dim = Interval(g.grad[i].lo() >= 0.0 ? dim.lo() : dim.hi());
          reduced = true;
        }
      }
      if (reduced) core_lo = std::max(core_lo, edge_core_enclosure(face, EnclosureForm::mean_value).lo());
    } catch (const DivisionByZeroInterval&) {
      face = box;
    }
  }
  double lb = scaled_lower_bound(prefactor, core_lo);
  if (clears(lb)) return lb;

  if (has_gauge_gradient(face)) {
    try {
      lb = std::max(lb, scaled_lower_bound(prefactor, edge_core_taylor(face).lo()));
      if (clears(lb)) return lb;
    } catch (const DivisionByZeroInterval&) {
    }
  }
  return std::max(lb, certified_residual_enclosure(box).lo());
}

}  // namespace quadineq
