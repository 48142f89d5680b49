#include "quadineq/certifier.hpp"

#include <algorithm>
#include <numbers>
#include <span>
#include <thread>

namespace quadineq {

namespace {

constexpr int kMaxReplayDepth = 400;

struct Node {
  FrameBox box;
  double lower_bound;
};

std::array<Interval, 4> free_dims(const FrameBox& b) { return {b.p[0], b.p[1], b.p[2], b.w}; }

bool same_free_box(const FrameBox& x, const FrameBox& y) { return free_dims(x) == free_dims(y); }

bool inside(const FrameBox& inner, const FrameBox& outer) {
  const auto a = free_dims(inner);
  const auto b = free_dims(outer);
  for (int i = 0; i < 4; ++i)
    if (!b[i].contains(a[i])) return false;
  return true;
}

bool lex_less(const FrameBox& x, const FrameBox& y) {
  const auto a = free_dims(x);
  const auto b = free_dims(y);
  for (int i = 0; i < 4; ++i) {
    if (a[i].lo() != b[i].lo()) return a[i].lo() < b[i].lo();
    if (a[i].hi() != b[i].hi()) return a[i].hi() < b[i].hi();
  }
  return false;
}

bool clears(double lower_bound, double target) { return lower_bound >= target && lower_bound > 0.0; }

// Boxes too wide to enclose get -inf and are split further.
double lower_bound_of(const FrameBox& box, double target) {
  try {
    return certified_lower_bound(box, target);
  } catch (const IndeterminateRegion&) {
    return -std::numeric_limits<double>::infinity();
  }
}

/// Evaluates lower bounds for a batch; results do not depend on scheduling.
void evaluate(std::span<Node> nodes, double target) {
  const unsigned threads =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), nodes.size()));
  auto work = [&](unsigned t) {
    for (std::size_t i = t; i < nodes.size(); i += threads) nodes[i].lower_bound = lower_bound_of(nodes[i].box, target);
  };
  if (threads <= 1) {
    for (auto& n : nodes) n.lower_bound = lower_bound_of(n.box, target);
    return;
  }
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
}

FrameBox with_domain_clip(FrameBox box, const FrameBox& root) {
  box.p[3] = root.p[3];
  return box;
}

}  // namespace

FrameBox certification_domain(double margin) {
  if (!(margin > 0.0 && margin <= 0.2)) throw Error("certification margin must lie in (0, 0.2]");
  const double p_hi = 1.0 - 3.0 * margin;
  FrameBox box = FrameBox::from_free({margin, p_hi}, {margin, p_hi}, {margin, p_hi},
                                     {margin * std::numbers::pi, (1.0 - margin) * std::numbers::pi});
  box.p[3] = Interval(margin, p_hi);
  return box;
}

std::pair<FrameBox, FrameBox> split_box(const FrameBox& box, const FrameBox& root) {
  const auto dims = free_dims(box);
  const auto root_dims = free_dims(root);
  int widest = 0;
  double best = -1.0;
  for (int i = 0; i < 4; ++i) {
    const double rel = dims[i].width() / root_dims[i].width();
    if (rel > best) {
      best = rel;
      widest = i;
    }
  }
  const Interval& d = dims[widest];
  const double cut = d.lo() + 0.5 * (d.hi() - d.lo());
  FrameBox left = box;
  FrameBox right = box;
  auto& l = widest < 3 ? left.p[widest] : left.w;
  auto& r = widest < 3 ? right.p[widest] : right.w;
  l = Interval(d.lo(), cut);
  r = Interval(cut, d.hi());
  return {left, right};
}

Certificate certify(double margin, double target, std::size_t max_boxes) {
  if (!(target >= 0.0)) throw Error("certification target must be nonnegative");
  if (max_boxes < 1) throw Error("max_boxes must be at least 1");
  const FrameBox root = certification_domain(margin);

  Certificate cert;
  cert.margin = margin;
  cert.target = target;

  std::vector<Node> settled;
  std::vector<Node> open{{root, 0.0}};
  evaluate(open, target);
  cert.box_count = 1;

  bool exhausted = false;
  for (;;) {
    std::vector<Node> failing;
    for (auto& n : open) (clears(n.lower_bound, target) ? settled : failing).push_back(n);
    open.clear();
    if (failing.empty()) break;

    std::sort(failing.begin(), failing.end(), [](const Node& x, const Node& y) {
      if (x.lower_bound != y.lower_bound) return x.lower_bound < y.lower_bound;
      return lex_less(x.box, y.box);
    });

    std::size_t leaves = settled.size() + failing.size();
    std::vector<Node> children;
    std::size_t next = 0;
    for (; next < failing.size(); ++next) {
      if (leaves + 1 > max_boxes) {
        exhausted = true;
        break;
      }
      auto [lhs, rhs] = split_box(failing[next].box, root);
      --leaves;
      for (const FrameBox& child : {lhs, rhs}) {
        if (child.misses_simplex()) continue;
        children.push_back({with_domain_clip(child, root), 0.0});
        ++leaves;
      }
    }
    evaluate(children, target);
    cert.box_count += children.size();
    open = std::move(children);
    if (exhausted) {
      settled.insert(settled.end(), failing.begin() + static_cast<std::ptrdiff_t>(next), failing.end());
      settled.insert(settled.end(), open.begin(), open.end());
      open.clear();
      break;
    }
  }

  std::sort(settled.begin(), settled.end(), [](const Node& x, const Node& y) { return lex_less(x.box, y.box); });
  cert.complete = !exhausted;
  cert.c_star = std::numeric_limits<double>::infinity();
  for (const Node& n : settled) {
    cert.c_star = std::min(cert.c_star, n.lower_bound);
    FrameBox recorded = n.box;
    recorded.p[3] = n.box.effective_p4();
    cert.leaves.push_back({recorded, n.lower_bound});
  }
  cert.complete = cert.complete && std::all_of(settled.begin(), settled.end(),
                                               [&](const Node& n) { return clears(n.lower_bound, target); });
  return cert;
}

namespace {

/// Partitions `leaves` down the canonical split tree rooted at `node`.
bool replay(const FrameBox& node, const FrameBox& root, std::span<const CertificateLeaf*> leaves, int depth,
            std::string& reason) {
  if (leaves.empty()) {
    if (node.misses_simplex()) return true;
    reason = "tiling gap: a feasible region is covered by no leaf";
    return false;
  }
  if (leaves.size() == 1 && same_free_box(leaves[0]->box, node)) return true;
  for (const CertificateLeaf* leaf : leaves) {
    if (same_free_box(leaf->box, node)) {
      reason = "overlapping leaves: a leaf contains other leaves";
      return false;
    }
  }
  if (depth >= kMaxReplayDepth) {
    reason = "split tree deeper than the replay limit";
    return false;
  }
  auto [lhs, rhs] = split_box(node, root);
  auto mid = std::partition(leaves.begin(), leaves.end(),
                            [&](const CertificateLeaf* leaf) { return inside(leaf->box, lhs); });
  for (auto it = mid; it != leaves.end(); ++it) {
    if (!inside((*it)->box, rhs)) {
      reason = "leaf does not follow the canonical bisection";
      return false;
    }
  }
  const auto split = static_cast<std::size_t>(mid - leaves.begin());
  return replay(lhs, root, leaves.subspan(0, split), depth + 1, reason) &&
         replay(rhs, root, leaves.subspan(split), depth + 1, reason);
}

}  // namespace

VerificationResult verify_certificate(const Certificate& cert) {
  if (!(cert.margin > 0.0 && cert.margin <= 0.2)) throw MalformedCertificate("certificate margin outside (0, 0.2]");
  if (!(cert.target >= 0.0)) throw MalformedCertificate("certificate target must be nonnegative");
  if (cert.leaves.empty()) return {false, "certificate has no leaves"};
  const FrameBox root = certification_domain(cert.margin);

  double min_bound = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cert.leaves.size(); ++i) {
    const CertificateLeaf& leaf = cert.leaves[i];
    const FrameBox box = with_domain_clip(leaf.box, root);
    if (!inside(box, root)) return {false, "leaf " + std::to_string(i) + " lies outside the domain"};
    if (box.misses_simplex()) return {false, "leaf " + std::to_string(i) + " misses the simplex"};
    if (!(leaf.box.p[3] == box.effective_p4()))
      return {false, "leaf " + std::to_string(i) + " records an inconsistent p4 interval"};
    double recomputed = 0.0;
    try {
      recomputed = lower_bound_of(box, cert.target);
    } catch (const Error& e) {
      return {false, "leaf " + std::to_string(i) + " cannot be evaluated: " + e.what()};
    }
    if (!(leaf.lower_bound <= recomputed))
      return {false, "leaf " + std::to_string(i) + " claims a lower bound above its enclosure"};
    if (!(leaf.lower_bound >= cert.c_star))
      return {false, "leaf " + std::to_string(i) + " lower bound is below c_star"};
    if (cert.complete && !clears(leaf.lower_bound, cert.target))
      return {false, "complete certificate has leaf " + std::to_string(i) + " below target"};
    min_bound = std::min(min_bound, leaf.lower_bound);
  }
  if (cert.c_star != min_bound) return {false, "c_star is not the minimum leaf lower bound"};
  if (cert.complete && !(cert.c_star > 0.0)) return {false, "complete certificate must have c_star > 0"};

  std::vector<const CertificateLeaf*> refs;
  refs.reserve(cert.leaves.size());
  for (const auto& leaf : cert.leaves) refs.push_back(&leaf);
  std::string reason;
  if (!replay(root, root, refs, 0, reason)) return {false, reason};
  return {true, {}};
}

}  // namespace quadineq
