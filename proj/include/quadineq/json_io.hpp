#pragma once

#include <json.hpp>

#include <optional>
#include <string>

#include "quadineq/audit.hpp"
#include "quadineq/certifier.hpp"
#include "quadineq/geometry.hpp"
#include "quadineq/search.hpp"

namespace quadineq {

using Json = nlohmann::ordered_json;

/// Serializes with every floating-point number written to 17 significant
/// digits, so parsing the text back reproduces each double exactly.
std::string dump_json(const Json& j, int indent = 2);

/// Parses JSON text; syntax errors become MalformedInput with line:column.
Json parse_json_text(const std::string& text, const std::string& source = "<input>");
Json read_json_file(const std::string& path);

/// {"points": [[x, y] x 4]} or {"frame": {"p": [p1..p4], "w": w}}.
struct GeometryInput {
  std::optional<Quadrilateral> quad;
  std::optional<DiagonalFrame> frame;

  Quadrilateral quadrilateral() const { return quad ? *quad : quad_from_frame(*frame); }
};

GeometryInput parse_geometry(const Json& j);

Json interval_json(const Interval& x);
Interval interval_from_json(const Json& j);

void to_json(Json& j, const Quadrilateral& q);
void to_json(Json& j, const DiagonalFrame& f);
void to_json(Json& j, const QuadMetrics<double>& m);
void to_json(Json& j, const EdgeTermSet<double>& e);
void to_json(Json& j, const AuditReport& r);
void to_json(Json& j, const Certificate& c);
void to_json(Json& j, const SearchResult& r);

/// Throws MalformedCertificate on schema violations.
Certificate certificate_from_json(const Json& j);

}  // namespace quadineq
