#include "quadineq/audit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

namespace quadineq {

namespace {

using Kind = CheckRecord::Kind;

// Fixed check order; merge relies on identical layouts.
const std::vector<std::pair<std::string, Kind>>& check_layout() {
  static const std::vector<std::pair<std::string, Kind>> layout = {
      {"residual_paths", Kind::identity},  {"lemma1_X", Kind::identity},
      {"lemma1_Y", Kind::identity},        {"lemma1_W", Kind::identity},
      {"lemma2", Kind::identity},          {"group_completeness", Kind::identity},
      {"p1_closed", Kind::identity},       {"p2_closed", Kind::identity},
      {"identity3", Kind::identity},       {"sign_resolved_form", Kind::identity},
      {"corollary1_1", Kind::inequality},  {"corollary1_2", Kind::inequality},
      {"corollary1_3", Kind::inequality},  {"theorem2", Kind::inequality},
      {"final_chain", Kind::inequality},   {"remainder", Kind::inequality},
      {"theorem1", Kind::inequality},
  };
  return layout;
}

AuditReport empty_report(double tol) {
  AuditReport r;
  r.tol = tol;
  for (const auto& [id, kind] : check_layout()) {
    CheckRecord c;
    c.id = id;
    c.kind = kind;
    r.checks.push_back(c);
  }
  return r;
}

void record_error(CheckRecord& c, double err, double tol) {
  ++c.evaluated;
  // NaN never passes.
  if (!(err <= c.max_err)) c.max_err = std::isnan(err) ? err : std::max(c.max_err, err);
  c.pass = c.pass && err <= tol;
}

void record_slack(CheckRecord& c, double slack, double tol) {
  ++c.evaluated;
  if (!(slack >= c.min_slack)) c.min_slack = std::isnan(slack) ? slack : std::min(c.min_slack, slack);
  c.pass = c.pass && slack >= -tol;
}

void record_skip(CheckRecord& c) { ++c.skipped; }

void audit_into(AuditReport& r, const Quadrilateral& q) {
  const double tol = r.tol;
  const double itol = r.inequality_tol;
  const QuadMetrics<double> m = metrics(q);
  const double P = m.length_product();
  auto it = r.checks.begin();
  auto next = [&]() -> CheckRecord& { return *it++; };

  const double edge = residual(m, ResidualPath::edge);
  const double expanded = residual(m, ResidualPath::expanded);
  const double lemma = residual(m, ResidualPath::lemma);
  record_error(next(), std::max(std::abs(edge - expanded), std::abs(edge - lemma)) / P, tol);

  double raw_groups = 0.0;
  for (TermGroup g : {TermGroup::X, TermGroup::Y, TermGroup::W}) {
    const double raw = multiplicity_one_sum(m, g, SumForm::raw);
    raw_groups += raw;
    record_error(next(), std::abs(raw - multiplicity_one_sum(m, g, SumForm::closed)) / P, tol);
  }
  const double two_raw = multiplicity_two_sum(m, SumForm::raw);
  record_error(next(), std::abs(two_raw - multiplicity_two_sum(m, SumForm::closed)) / P, tol);
  record_error(next(), std::abs(raw_groups + two_raw - expanded) / P, tol);

  const AngularParts<double> def = angular_parts(m, SumForm::raw);
  const AngularParts<double> closed = angular_parts(m, SumForm::closed);
  record_error(next(), std::abs(def.p1_value - closed.p1_value), tol);
  record_error(next(), std::abs(def.p2_value - closed.p2_value), tol);

  const auto tri = identity3_angles(m);
  const double angle_sum_defect = std::abs(tri[0] + tri[1] + tri[2] - std::numbers::pi);
  record_error(next(), std::max(angle_sum_defect, std::abs(identity3_defect(tri[0], tri[1], tri[2]))), tol);

  // Sign adjudication: which variant reproduces the raw area-product sum.
  const double plus_err = std::abs(two_raw - multiplicity_two_sine_form(m, SignVariant::plus)) / P;
  const double minus_err = std::abs(two_raw - multiplicity_two_sine_form(m, SignVariant::minus)) / P;
  SignResolution& s = r.sign;
  ++s.samples;
  s.plus_max_err = std::max(s.plus_max_err, plus_err);
  s.minus_max_err = std::max(s.minus_max_err, minus_err);
  s.minus_min_disagreement = std::min(s.minus_min_disagreement, minus_err);
  s.plus_min_disagreement = std::min(s.plus_min_disagreement, plus_err);
  if (plus_err <= tol && minus_err >= kSignDecisiveFactor * tol) ++s.plus_decisive;
  if (minus_err <= tol && plus_err >= kSignDecisiveFactor * tol) ++s.minus_decisive;
  // Downstream P1/P2 checks use the variant that fits this sample.
  record_error(next(), std::min(plus_err, minus_err), tol);

  for (int k = 1; k <= 3; ++k) record_slack(next(), corollary1_slack(m, k), itol);

  CheckRecord& theorem2 = next();
  CheckRecord& chain = next();
  if (theorem2_hypotheses(m)) {
    record_slack(theorem2, theorem2_value(m), itol);
    record_slack(chain, final_chain_slack(m), itol);
  } else {
    record_skip(theorem2);
    record_skip(chain);
  }

  CheckRecord& remainder = next();
  const double rem = remainder_terms(m);
  if (!std::isfinite(rem))
    record_slack(remainder, rem, itol);
  else if (m.X >= 0.0 && m.Y >= 0.0)
    record_slack(remainder, rem, itol);
  else
    record_skip(remainder);

  record_slack(next(), edge / P, itol);
}

}  // namespace

std::string_view SignResolution::outcome(double tol) const {
  if (samples == 0) return "unresolved";
  if (plus_max_err <= tol && 2 * plus_decisive > samples) return "plus";
  if (minus_max_err <= tol && 2 * minus_decisive > samples) return "minus";
  return "unresolved";
}

bool AuditReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; }) &&
         sign_resolution() != "unresolved";
}

const CheckRecord& AuditReport::check(std::string_view id) const {
  for (const auto& c : checks)
    if (c.id == id) return c;
  throw Error("unknown audit check id: " + std::string(id));
}

void AuditReport::merge(const AuditReport& other) {
  if (other.checks.size() != checks.size()) throw Error("cannot merge audit reports with different layouts");
  samples += other.samples;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    CheckRecord& c = checks[i];
    const CheckRecord& o = other.checks[i];
    c.max_err = (std::isnan(c.max_err) || std::isnan(o.max_err)) ? std::nan("") : std::max(c.max_err, o.max_err);
    c.min_slack =
        (std::isnan(c.min_slack) || std::isnan(o.min_slack)) ? std::nan("") : std::min(c.min_slack, o.min_slack);
    c.evaluated += o.evaluated;
    c.skipped += o.skipped;
    c.pass = c.pass && o.pass;
  }
  sign.plus_max_err = std::max(sign.plus_max_err, other.sign.plus_max_err);
  sign.minus_max_err = std::max(sign.minus_max_err, other.sign.minus_max_err);
  sign.minus_min_disagreement = std::min(sign.minus_min_disagreement, other.sign.minus_min_disagreement);
  sign.plus_min_disagreement = std::min(sign.plus_min_disagreement, other.sign.plus_min_disagreement);
  sign.plus_decisive += other.sign.plus_decisive;
  sign.minus_decisive += other.sign.minus_decisive;
  sign.samples += other.sign.samples;
}

AuditReport audit(const Quadrilateral& q, double tol) {
  if (!(tol > 0.0)) throw Error("audit tolerance must be positive");
  AuditReport r = empty_report(tol);
  r.samples = 1;
  audit_into(r, q);
  return r;
}

AuditReport audit_samples(std::uint64_t seed, std::size_t samples, double tol, double margin,
                          SampleStrategy strategy, unsigned threads) {
  if (!(tol > 0.0)) throw Error("audit tolerance must be positive");
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(samples, 1)));

  std::vector<AuditReport> parts(threads, empty_report(tol));
  auto work = [&](unsigned t) {
    for (std::size_t i = t; i < samples; i += threads) {
      audit_into(parts[t], sample(derive_seed(seed, i), strategy, margin));
      ++parts[t].samples;
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }

  AuditReport r = empty_report(tol);
  r.seed = seed;
  r.margin = margin;
  for (const auto& part : parts) r.merge(part);
  return r;
}

}  // namespace quadineq
