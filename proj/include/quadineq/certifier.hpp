#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "quadineq/enclosure.hpp"

namespace quadineq {

inline constexpr const char* kToolkitVersion = "1.0.0";

struct CertificateLeaf {
  FrameBox box;
  double lower_bound = 0.0;
};

/// Branch-and-bound record over the margin-truncated normalized frame domain
/// {p_i >= margin, sum p = 1} x [margin pi, (1 - margin) pi].
struct Certificate {
  std::string version = kToolkitVersion;
  double margin = 0.0;
  double target = 0.0;
  bool complete = false;
  /// Minimum leaf lower bound.
  double c_star = 0.0;
  /// Boxes evaluated, including split parents.
  std::size_t box_count = 0;
  std::vector<CertificateLeaf> leaves;
};

/// Root box of the certification domain (p4 clipped to [margin, 1 - 3 margin]).
FrameBox certification_domain(double margin);

/// Bisects the widest free dimension, widths measured relative to `root`;
/// ties go to the first of p1, p2, p3, w.
std::pair<FrameBox, FrameBox> split_box(const FrameBox& box, const FrameBox& root);

/// Splits boxes (lowest lower bound first) until every leaf lower bound, as
/// given by certified_lower_bound, clears both `target` and zero, or until the
/// leaf count would exceed max_boxes. A budget stop returns complete == false
/// with the current leaves.
Certificate certify(double margin, double target, std::size_t max_boxes);

struct VerificationResult {
  bool ok = false;
  std::string reason;  // empty when ok
};

/// Independently re-evaluates every leaf and replays the split tree to check
/// that the leaves tile the domain. Throws MalformedCertificate on
/// structurally invalid input.
VerificationResult verify_certificate(const Certificate& cert);

}  // namespace quadineq
