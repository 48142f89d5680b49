#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "quadineq/audit.hpp"
#include "quadineq/certifier.hpp"
#include "quadineq/json_io.hpp"
#include "quadineq/sampler.hpp"
#include "quadineq/search.hpp"

namespace quadineq::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string points;
  std::string frame;
  std::string certificate;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  double audit_margin = 0.01;
  double certify_margin = 0.1;
  std::vector<double> search_margins{0.005};
  double target = 0.0;
  std::size_t max_boxes = 1000000;
  int starts = 64;
  int budget = 2000;
  std::string out;
  std::string format = "json";
};

// Seed and size of the fixed audit batch whose sign outcome is embedded in
// reports of commands that do not audit anything themselves.
constexpr std::uint64_t kReferenceSeed = 1;
constexpr std::size_t kReferenceSamples = 256;
constexpr double kReferenceMargin = 0.01;

std::string csv_double(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return {buf, res.ptr};
}

/// Inline JSON when the argument starts like JSON, a file path otherwise.
Json load_argument(const std::string& value, const std::string& flag) {
  const auto first = value.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (value[first] == '{' || value[first] == '['))
    return parse_json_text(value, "--" + flag);
  return read_json_file(value);
}

GeometryInput load_geometry(const Options& o) {
  if (o.points.empty() == o.frame.empty()) throw UsageError("eval needs exactly one of --points or --frame");
  if (!o.points.empty()) {
    Json j = load_argument(o.points, "points");
    if (j.is_array()) j = Json{{"points", j}};
    if (!j.is_object() || !j.contains("points")) throw MalformedInput("--points expects four [x, y] pairs");
    return parse_geometry(j);
  }
  Json j = load_argument(o.frame, "frame");
  if (j.is_object() && !j.contains("frame")) j = Json{{"frame", j}};
  if (!j.is_object() || !j.contains("frame")) throw MalformedInput("--frame expects {\"p\": [p1, p2, p3, p4], \"w\": w}");
  return parse_geometry(j);
}

std::string reference_sign_resolution(double tol) {
  return std::string(audit_samples(kReferenceSeed, kReferenceSamples, tol, kReferenceMargin).sign_resolution());
}

Json reference_sign_basis(double tol) {
  return Json{{"seed", kReferenceSeed}, {"samples", kReferenceSamples}, {"margin", kReferenceMargin}, {"tol", tol}};
}

Json header(const std::string& command, const Json& config) {
  return Json{{"tool", "quadineq"}, {"version", kToolkitVersion}, {"command", command}, {"config", config}};
}

class Output {
 public:
  Output(const Options& o, std::ostream& fallback) : path_(o.out), fallback_(fallback) {}

  void write(const std::string& text) {
    if (path_.empty()) {
      fallback_ << text;
      return;
    }
    std::ofstream file(path_, std::ios::binary);
    if (!file) throw UsageError("cannot write " + path_);
    file << text;
  }

 private:
  std::string path_;
  std::ostream& fallback_;
};

void require_json(const Options& o, const std::string& command) {
  if (o.format != "json") throw UsageError(command + " writes JSON only; csv is available for audit, certify and search");
}

int run_eval(const Options& o, std::ostream& out) {
  require_json(o, "eval");
  const GeometryInput input = load_geometry(o);
  const Quadrilateral q = input.quadrilateral();
  const QuadMetrics<double> m = metrics(q);
  const AuditReport report = audit(q, o.tol);

  Json config{{"input", input.quad ? Json(*input.quad) : Json(*input.frame)}, {"tol", o.tol}, {"format", o.format}};
  Json j = header("eval", config);
  j["sign_resolution"] = std::string(report.sign_resolution());
  j["quadrilateral"] = Json(q)["points"];
  j["frame"] = Json(frame_of(q))["frame"];
  j["metrics"] = m;
  j["edge_terms"] = edge_terms(m);
  j["residual"] = Json{{"edge", residual(m, ResidualPath::edge)},
                       {"expanded", residual(m, ResidualPath::expanded)},
                       {"lemma", residual(m, ResidualPath::lemma)}};
  j["normalized_residual"] = residual(m, ResidualPath::edge) / m.length_product();
  j["audit"] = report;
  Output(o, out).write(dump_json(j));
  return report.all_passed() ? kExitOk : kExitViolation;
}

std::string audit_csv(const Options& o, const AuditReport& report) {
  std::ostringstream s;
  s << "# quadineq " << kToolkitVersion << " audit seed=" << o.seed << " samples=" << o.samples << " tol="
    << csv_double(o.tol) << " margin=" << csv_double(o.audit_margin) << "\n";
  s << "# sign_resolution=" << report.sign_resolution() << " all_passed=" << (report.all_passed() ? "true" : "false")
    << "\n";
  s << "sample,p1,p2,p3,p4,w,normalized_residual,corollary1_1,corollary1_2,corollary1_3,theorem2_hypotheses,"
       "theorem2_value,final_chain_slack\n";
  for (std::size_t i = 0; i < o.samples; ++i) {
    const Quadrilateral q = sample(derive_seed(o.seed, i), SampleStrategy::frame_uniform, o.audit_margin);
    const QuadMetrics<double> m = metrics(q);
    const DiagonalFrame f = frame_of(q).normalized();
    const bool hyp = theorem2_hypotheses(m);
    s << i;
    for (double v : {f.p[0], f.p[1], f.p[2], f.p[3], f.w, residual(m, ResidualPath::edge) / m.length_product(),
                     corollary1_slack(m, 1), corollary1_slack(m, 2), corollary1_slack(m, 3)})
      s << ',' << csv_double(v);
    s << ',' << (hyp ? "true" : "false") << ',' << csv_double(theorem2_value(m)) << ','
      << csv_double(final_chain_slack(m)) << '\n';
  }
  return s.str();
}

int run_audit(const Options& o, std::ostream& out) {
  const AuditReport report = audit_samples(o.seed, o.samples, o.tol, o.audit_margin);
  if (o.format == "csv") {
    Output(o, out).write(audit_csv(o, report));
  } else {
    Json config{{"samples", o.samples},
                {"seed", o.seed},
                {"tol", o.tol},
                {"margin", o.audit_margin},
                {"sampler", "frame_uniform"},
                {"format", o.format}};
    Json j = header("audit", config);
    j["sign_resolution"] = std::string(report.sign_resolution());
    j["report"] = report;
    Output(o, out).write(dump_json(j));
  }
  return report.all_passed() ? kExitOk : kExitViolation;
}

std::string certificate_csv(const Certificate& c) {
  std::ostringstream s;
  s << "# quadineq " << kToolkitVersion << " certificate margin=" << csv_double(c.margin)
    << " target=" << csv_double(c.target) << " complete=" << (c.complete ? "true" : "false")
    << " c_star=" << csv_double(c.c_star) << "\n";
  s << "p1_lo,p1_hi,p2_lo,p2_hi,p3_lo,p3_hi,p4_lo,p4_hi,w_lo,w_hi,lower_bound\n";
  for (const auto& leaf : c.leaves) {
    const auto& b = leaf.box;
    bool first = true;
    for (const Interval& x : {b.p[0], b.p[1], b.p[2], b.p[3], b.w}) {
      s << (first ? "" : ",") << csv_double(x.lo()) << ',' << csv_double(x.hi());
      first = false;
    }
    s << ',' << csv_double(leaf.lower_bound) << '\n';
  }
  return s.str();
}

int run_certify(const Options& o, std::ostream& out) {
  const Certificate cert = certify(o.certify_margin, o.target, o.max_boxes);
  const std::string sign = reference_sign_resolution(o.tol);
  Json config{{"margin", o.certify_margin}, {"target", o.target}, {"max_boxes", o.max_boxes}, {"format", o.format}};
  if (o.format == "csv") {
    Output(o, out).write(certificate_csv(cert));
  } else {
    Json j = cert;
    j["config"] = config;
    j["sign_resolution"] = sign;
    j["sign_resolution_basis"] = reference_sign_basis(o.tol);
    Output(o, out).write(dump_json(j));
  }
  if (!o.out.empty()) {
    Json summary = header("certify", config);
    summary["sign_resolution"] = sign;
    summary["certificate"] = o.out;
    summary["complete"] = cert.complete;
    summary["c_star"] = cert.c_star;
    summary["box_count"] = cert.box_count;
    summary["leaves"] = cert.leaves.size();
    out << dump_json(summary);
  }
  return cert.complete ? kExitOk : kExitViolation;
}

int run_check_cert(const Options& o, std::ostream& out) {
  require_json(o, "check-cert");
  if (o.certificate.empty()) throw UsageError("check-cert needs a certificate file");
  const Json doc = read_json_file(o.certificate);
  Json config{{"certificate", o.certificate}, {"format", o.format}};
  Json j = header("check-cert", config);
  j["sign_resolution"] = reference_sign_resolution(o.tol);
  j["sign_resolution_basis"] = reference_sign_basis(o.tol);
  VerificationResult result;
  std::optional<Certificate> cert;
  try {
    cert = certificate_from_json(doc);
    result = verify_certificate(*cert);
  } catch (const MalformedCertificate& e) {
    result = {false, e.what()};
  }
  j["verified"] = result.ok;
  j["reason"] = result.reason;
  if (cert) {
    j["complete"] = cert->complete;
    j["margin"] = cert->margin;
    j["target"] = cert->target;
    j["c_star"] = cert->c_star;
    j["leaves"] = cert->leaves.size();
  }
  Output(o, out).write(dump_json(j));
  return result.ok && cert->complete ? kExitOk : kExitViolation;
}

std::string search_csv(const std::vector<SearchResult>& results) {
  std::ostringstream s;
  s << "# quadineq " << kToolkitVersion << " search\n";
  s << "margin,start,start_value,end_value,iterations,evaluations,p1,p2,p3,p4,w\n";
  for (const auto& r : results) {
    for (std::size_t k = 0; k < r.trajectories.size(); ++k) {
      const auto& t = r.trajectories[k];
      s << csv_double(r.margin) << ',' << k << ',' << csv_double(t.start_value) << ',' << csv_double(t.end_value)
        << ',' << t.iterations << ',' << t.evaluations;
      for (double v : {t.end.p[0], t.end.p[1], t.end.p[2], t.end.p[3], t.end.w}) s << ',' << csv_double(v);
      s << '\n';
    }
  }
  return s.str();
}

int run_search(const Options& o, std::ostream& out) {
  const std::vector<SearchResult> results = margin_schedule(o.seed, o.starts, o.search_margins, o.budget);
  const bool flagged =
      std::any_of(results.begin(), results.end(), [](const SearchResult& r) { return r.has_counterexample_candidate(); });
  if (o.format == "csv") {
    Output(o, out).write(search_csv(results));
  } else {
    Json config{{"seed", o.seed},
                {"starts", o.starts},
                {"margins", o.search_margins},
                {"budget", o.budget},
                {"format", o.format}};
    Json j = header("search", config);
    j["sign_resolution"] = reference_sign_resolution(o.tol);
    j["sign_resolution_basis"] = reference_sign_basis(o.tol);
    j["counterexample_candidate"] = flagged;
    Json best = Json::array();
    for (const auto& r : results) best.push_back(Json{{"margin", r.margin}, {"best_residual", r.best_residual}});
    j["schedule"] = best;
    if (results.size() > 1) j["schedule_decreasing"] = schedule_decreasing(results);
    Json runs = Json::array();
    for (const auto& r : results) runs.push_back(r);
    j["runs"] = runs;
    Output(o, out).write(dump_json(j));
  }
  return flagged ? kExitViolation : kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical toolkit for a six-term inequality on convex quadrilaterals", "quadineq"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolkitVersion);
  Options o;

  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", o.out, "Write the report to this file instead of stdout");
  };
  auto add_tol = [&](CLI::App* cmd) {
    cmd->add_option("--tol", o.tol, "Relative tolerance for identity checks")->check(CLI::Range(1e-16, 1e-1));
  };

  CLI::App* eval = app.add_subcommand("eval", "Report metrics, edge terms and the residual of one quadrilateral");
  eval->add_option("--points", o.points, "Four [x, y] pairs as inline JSON or a JSON file");
  eval->add_option("--frame", o.frame, "Diagonal frame {\"p\": [...], \"w\": w} as inline JSON or a JSON file");
  add_tol(eval);
  add_format(eval);

  CLI::App* audit_cmd = app.add_subcommand("audit", "Run every identity and inequality check on seeded samples");
  audit_cmd->add_option("--samples", o.samples, "Number of samples")->check(CLI::Range(std::size_t{1}, std::size_t{100000000}));
  audit_cmd->add_option("--seed", o.seed, "Base seed");
  audit_cmd->add_option("--margin", o.audit_margin, "Sampling margin")->check(CLI::Range(0.0, 0.2));
  add_tol(audit_cmd);
  add_format(audit_cmd);

  CLI::App* certify_cmd = app.add_subcommand("certify", "Certify a residual lower bound by branch and bound");
  certify_cmd->add_option("--margin", o.certify_margin, "Domain margin in (0, 0.2]")->check(CLI::Range(1e-6, 0.2));
  certify_cmd->add_option("--target", o.target, "Required lower bound")->check(CLI::NonNegativeNumber);
  certify_cmd->add_option("--max-boxes", o.max_boxes, "Leaf budget")->check(CLI::PositiveNumber);
  add_tol(certify_cmd);
  add_format(certify_cmd);

  CLI::App* check_cmd = app.add_subcommand("check-cert", "Verify a certificate independently");
  check_cmd->add_option("certificate", o.certificate, "Certificate JSON file")->required();
  add_tol(check_cmd);
  add_format(check_cmd);

  CLI::App* search_cmd = app.add_subcommand("search", "Multi-start search for small normalized residuals");
  search_cmd->add_option("--starts", o.starts, "Number of starts")->check(CLI::Range(1, 1000000));
  search_cmd->add_option("--seed", o.seed, "Base seed");
  search_cmd->add_option("--margin", o.search_margins, "Domain margin; a comma list runs a schedule")
      ->delimiter(',')
      ->check(CLI::Range(1e-6, 0.2));
  search_cmd->add_option("--budget", o.budget, "Objective evaluations per start")->check(CLI::Range(0, 100000000));
  add_tol(search_cmd);
  add_format(search_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*eval) return run_eval(o, out);
    if (*audit_cmd) return run_audit(o, out);
    if (*certify_cmd) return run_certify(o, out);
    if (*check_cmd) return run_check_cert(o, out);
    return run_search(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
  } catch (const MalformedInput& e) {
    err << "malformed input: " << e.what() << "\n";
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}

}  // namespace quadineq::cli
