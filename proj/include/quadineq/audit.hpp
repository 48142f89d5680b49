#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "quadineq/kernel.hpp"
#include "quadineq/sampler.hpp"

namespace quadineq {

/// Inequality slacks count as violated below -kInequalityTolerance, measured
/// on dimensionless quantities (abcdef normalized to 1).
inline constexpr double kInequalityTolerance = 1e-12;

/// Disagreement factor, relative to the identity tolerance, that makes a
/// sample decisive for rejecting a sign variant.
inline constexpr double kSignDecisiveFactor = 1e6;

struct CheckRecord {
  enum class Kind { identity, inequality };

  std::string id;
  Kind kind = Kind::identity;
  double max_err = 0.0;
  double min_slack = std::numeric_limits<double>::infinity();
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
  bool pass = true;
};

/// Outcome of comparing the raw multiplicity-two sum with both sign variants
/// of its sine-product form.
struct SignResolution {
  double plus_max_err = 0.0;
  double minus_max_err = 0.0;
  double minus_min_disagreement = std::numeric_limits<double>::infinity();
  double plus_min_disagreement = std::numeric_limits<double>::infinity();
  std::size_t plus_decisive = 0;   // minus rejected by >= factor * tol, plus within tol
  std::size_t minus_decisive = 0;  // the reverse
  std::size_t samples = 0;

  /// "plus", "minus" or "unresolved".
  std::string_view outcome(double tol) const;
};

struct AuditReport {
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  double tol = 0.0;
  double inequality_tol = kInequalityTolerance;
  double margin = 0.0;
  std::vector<CheckRecord> checks;
  SignResolution sign;

  bool all_passed() const;
  const CheckRecord& check(std::string_view id) const;
  std::string_view sign_resolution() const { return sign.outcome(tol); }
  /// Order-independent combination of two reports over disjoint samples.
  void merge(const AuditReport& other);
};

/// Every identity and inequality check on one quadrilateral.
AuditReport audit(const Quadrilateral& q, double tol);

/// Audits `samples` seeded quadrilaterals; sample i uses derive_seed(seed, i).
/// The result does not depend on `threads` (0 = hardware concurrency).
AuditReport audit_samples(std::uint64_t seed, std::size_t samples, double tol, double margin,
                          SampleStrategy strategy = SampleStrategy::frame_uniform, unsigned threads = 0);

}  // namespace quadineq
