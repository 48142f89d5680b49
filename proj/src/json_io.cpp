#include "quadineq/json_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace quadineq {

namespace {

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

void emit(const Json& j, std::string& out, int indent, int level) {
  const bool pretty = indent >= 0;
  auto newline = [&](int lvl) {
    if (!pretty) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * lvl), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        newline(level + 1);
        out += Json(key).dump();
        out += pretty ? ": " : ":";
        emit(value, out, indent, level + 1);
      }
      newline(level);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Short numeric arrays (points, intervals) stay on one line.
      const bool inline_array =
          j.size() <= 5 && std::all_of(j.begin(), j.end(), [](const Json& v) { return v.is_number(); });
      out += '[';
      bool first = true;
      for (const auto& value : j) {
        if (!first) out += inline_array && pretty ? ", " : ",";
        first = false;
        if (!inline_array) newline(level + 1);
        emit(value, out, indent, level + 1);
      }
      if (!inline_array) newline(level);
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

template <class T>
T require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw MalformedInput(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(std::string("field \"") + key + "\" has the wrong type: " + e.what());
  }
}

Point2d point_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw MalformedInput("a point must be a [x, y] pair of numbers");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
  std::string out;
  emit(j, out, indent, 0);
  if (indent >= 0) out += '\n';
  return out;
}

Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw MalformedInput(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

GeometryInput parse_geometry(const Json& j) {
  GeometryInput g;
  if (!j.is_object()) throw MalformedInput("geometry document must be a JSON object");
  if (j.contains("points") == j.contains("frame"))
    throw MalformedInput("geometry document needs exactly one of \"points\" or \"frame\"");
  if (j.contains("points")) {
    const Json& pts = j.at("points");
    if (!pts.is_array() || pts.size() != 4) throw MalformedInput("\"points\" must hold four [x, y] pairs");
    g.quad = quad_from_points(
        {point_from_json(pts[0]), point_from_json(pts[1]), point_from_json(pts[2]), point_from_json(pts[3])});
    return g;
  }
  const Json& fr = j.at("frame");
  const auto p = require<std::vector<double>>(fr, "p");
  if (p.size() != 4) throw MalformedInput("\"frame.p\" must hold four numbers");
  DiagonalFrame f;
  std::copy(p.begin(), p.end(), f.p.begin());
  f.w = require<double>(fr, "w");
  f.validate();
  g.frame = f;
  return g;
}

Json interval_json(const Interval& x) { return Json::array({x.lo(), x.hi()}); }

Interval interval_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw MalformedInput("an interval must be a [lo, hi] pair of numbers");
  const double lo = j[0].get<double>();
  const double hi = j[1].get<double>();
  if (!(lo <= hi)) throw MalformedInput("interval with lo > hi");
  return {lo, hi};
}

void to_json(Json& j, const Quadrilateral& q) {
  Json pts = Json::array();
  for (const auto& z : q.vertices()) pts.push_back(Json::array({z(0), z(1)}));
  j = Json{{"points", pts}};
}

void to_json(Json& j, const DiagonalFrame& f) {
  j = Json{{"frame", {{"p", Json::array({f.p[0], f.p[1], f.p[2], f.p[3]})}, {"w", f.w}}}};
}

void to_json(Json& j, const QuadMetrics<double>& m) {
  auto arr = [](const std::array<double, 4>& a) { return Json::array({a[0], a[1], a[2], a[3]}); };
  j = Json{{"a", m.a},       {"b", m.b},       {"c", m.c},         {"d", m.d},         {"e", m.e},
           {"f", m.f},       {"A123", m.A123}, {"A124", m.A124},   {"A134", m.A134},   {"A234", m.A234},
           {"alpha", arr(m.alpha)},            {"beta", arr(m.beta)}, {"gamma", arr(m.gamma)},
           {"X", m.X},       {"Y", m.Y},       {"W", m.W},         {"Wp", m.Wp}};
}

void to_json(Json& j, const EdgeTermSet<double>& e) {
  j = Json{{"e12", e.e12}, {"e23", e.e23}, {"e34", e.e34}, {"e41", e.e41}, {"e13", e.e13}, {"e24", e.e24}};
}

void to_json(Json& j, const AuditReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json item{{"id", c.id}, {"kind", c.kind == CheckRecord::Kind::identity ? "identity" : "inequality"}};
    item["max_err"] = c.kind == CheckRecord::Kind::identity ? Json(c.max_err) : Json(nullptr);
    item["min_slack"] = c.kind == CheckRecord::Kind::inequality && c.evaluated > 0 ? Json(c.min_slack) : Json(nullptr);
    item["evaluated"] = c.evaluated;
    item["skipped"] = c.skipped;
    item["pass"] = c.pass;
    checks.push_back(item);
  }
  j = Json{{"seed", r.seed},
           {"samples", r.samples},
           {"tol", r.tol},
           {"inequality_tol", r.inequality_tol},
           {"margin", r.margin},
           {"checks", checks},
           {"sign_resolution", std::string(r.sign_resolution())},
           {"sign_detail",
            {{"plus_max_err", r.sign.plus_max_err},
             {"minus_max_err", r.sign.minus_max_err},
             {"minus_min_disagreement", r.sign.minus_min_disagreement},
             {"plus_decisive", r.sign.plus_decisive},
             {"minus_decisive", r.sign.minus_decisive}}},
           {"all_passed", r.all_passed()}};
}

void to_json(Json& j, const Certificate& c) {
  Json leaves = Json::array();
  for (const auto& leaf : c.leaves) {
    leaves.push_back(Json{{"box",
                           {{"p1", interval_json(leaf.box.p[0])},
                            {"p2", interval_json(leaf.box.p[1])},
                            {"p3", interval_json(leaf.box.p[2])},
                            {"p4", interval_json(leaf.box.p[3])},
                            {"w", interval_json(leaf.box.w)}}},
                          {"lower_bound", leaf.lower_bound}});
  }
  j = Json{{"version", c.version},
           {"margin", c.margin},
           {"gauge", "psum1"},
           {"split_rule", "bisect-widest-relative"},
           {"target", c.target},
           {"complete", c.complete},
           {"c_star", c.c_star},
           {"box_count", c.box_count},
           {"leaves", leaves}};
}

void to_json(Json& j, const SearchResult& r) {
  Json starts = Json::array();
  for (const auto& t : r.trajectories) {
    starts.push_back(Json{{"start", Json(t.start)["frame"]},
                          {"end", Json(t.end)["frame"]},
                          {"start_value", t.start_value},
                          {"end_value", t.end_value},
                          {"iterations", t.iterations},
                          {"evaluations", t.evaluations}});
  }
  Json candidates = Json::array();
  for (const auto& c : r.candidates)
    candidates.push_back(Json{{"flag", "COUNTEREXAMPLE-CANDIDATE"},
                              {"frame", Json(c.frame)["frame"]},
                              {"normalized_residual", c.normalized_residual},
                              {"confirmed_by_reaudit", c.confirmed}});
  j = Json{{"seed", r.seed},
           {"starts", r.starts},
           {"margin", r.margin},
           {"budget", r.budget},
           {"best_residual", r.best_residual},
           {"best_frame", Json(r.best_frame)["frame"]},
           {"counterexample_candidates", candidates},
           {"trajectories", starts}};
}

Certificate certificate_from_json(const Json& j) {
  try {
    Certificate c;
    c.version = require<std::string>(j, "version");
    if (require<std::string>(j, "gauge") != "psum1") throw MalformedCertificate("unsupported gauge");
    c.margin = require<double>(j, "margin");
    c.target = require<double>(j, "target");
    c.complete = require<bool>(j, "complete");
    c.c_star = require<double>(j, "c_star");
    if (j.contains("box_count")) c.box_count = j.at("box_count").get<std::size_t>();
    const Json& leaves = j.at("leaves");
    if (!leaves.is_array()) throw MalformedCertificate("\"leaves\" must be an array");
    c.leaves.reserve(leaves.size());
    for (const Json& leaf : leaves) {
      const Json& box = leaf.at("box");
      CertificateLeaf l;
      l.box.p = {interval_from_json(box.at("p1")), interval_from_json(box.at("p2")), interval_from_json(box.at("p3")),
                 interval_from_json(box.at("p4"))};
      l.box.w = interval_from_json(box.at("w"));
      l.lower_bound = require<double>(leaf, "lower_bound");
      c.leaves.push_back(l);
    }
    return c;
  } catch (const MalformedCertificate&) {
    throw;
  } catch (const std::exception& e) {
    throw MalformedCertificate(std::string("malformed certificate: ") + e.what());
  }
}

}  // namespace quadineq
