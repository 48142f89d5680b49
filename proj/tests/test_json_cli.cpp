#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"
#include "quadineq/json_io.hpp"

using namespace quadineq;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code;
  std::string out, err;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / ("quadineq_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

const std::string kSquare = "[[0,0],[1,0],[1,1],[0,1]]";

}  // namespace

TEST_CASE("doubles survive a text round trip") {
  const std::vector<double> values{0.1, 1.0 / 3.0, std::nextafter(1.0, 2.0), 1e-300, -2.5e17, 4.9e-324};
  const Json j = values;
  const Json back = parse_json_text(dump_json(j));
  for (std::size_t i = 0; i < values.size(); ++i) CHECK(back[i].get<double>() == values[i]);
  const Interval x(0.1, 0.30000000000000004);
  CHECK(interval_from_json(parse_json_text(dump_json(interval_json(x)))) == x);
}

TEST_CASE("syntax errors carry line and column") {
  try {
    parse_json_text("{\n  \"a\": [1, 2,\n}", "doc.json");
    FAIL("expected MalformedInput");
  } catch (const MalformedInput& e) {
    const std::string what = e.what();
    CHECK(what.find("doc.json") != std::string::npos);
    CHECK(what.find("3:") != std::string::npos);
  }
  CHECK_THROWS_AS(read_json_file((scratch_dir() / "missing.json").string()), MalformedInput);
}

TEST_CASE("geometry input needs exactly one of points and frame") {
  const GeometryInput pts = parse_geometry(parse_json_text("{\"points\": " + kSquare + "}"));
  CHECK(pts.quad.has_value());
  const GeometryInput fr = parse_geometry(parse_json_text("{\"frame\": {\"p\": [1, 1, 1, 1], \"w\": 1.5}}"));
  CHECK(fr.frame.has_value());
  CHECK(fr.quadrilateral().vertex(0).x() == doctest::Approx(1.0));
  CHECK_THROWS_AS(parse_geometry(parse_json_text("{}")), MalformedInput);
  CHECK_THROWS_AS(parse_geometry(parse_json_text("{\"points\": " + kSquare +
                                                 ", \"frame\": {\"p\": [1, 1, 1, 1], \"w\": 1.5}}")),
                  MalformedInput);
  CHECK_THROWS_AS(parse_geometry(parse_json_text("{\"points\": [[0,0],[1,0],[1,1]]}")), MalformedInput);
  CHECK_THROWS_AS(parse_geometry(parse_json_text("{\"points\": [[0,0],[1,0],[0.2,0.2],[0,1]]}")), Error);
  CHECK_THROWS_AS(parse_geometry(parse_json_text("{\"frame\": {\"p\": [1, 1, 1], \"w\": 1.5}}")), MalformedInput);
}

TEST_CASE("eval reports the square") {
  const RunResult r = run_cli({"eval", "--points", kSquare});
  REQUIRE(r.code == cli::kExitOk);
  const Json j = parse_json_text(r.out);
  CHECK(j["tool"] == "quadineq");
  CHECK(j["command"] == "eval");
  CHECK(j["sign_resolution"] == "plus");
  for (const char* path : {"edge", "expanded", "lemma"}) {
    CAPTURE(path);
    CHECK(std::abs(j["residual"][path].get<double>() - 2.0) <= 1e-12);
  }
  CHECK(j["normalized_residual"].get<double>() == doctest::Approx(1.0));
  CHECK(j["frame"]["w"].get<double>() == doctest::Approx(std::acos(0.0)));

  const RunResult f = run_cli({"eval", "--frame", "{\"p\": [1, 1, 1, 1], \"w\": 1.5707963267948966}"});
  REQUIRE(f.code == cli::kExitOk);
  CHECK(std::abs(parse_json_text(f.out)["residual"]["edge"].get<double>() - 16.0) <= 1e-12 * 16);

  const fs::path file = scratch_dir() / "square.json";
  write_file(file, "{\"points\": " + kSquare + "}");
  const RunResult from_file = run_cli({"eval", "--points", file.string()});
  CHECK(from_file.code == cli::kExitOk);
}

TEST_CASE("audit exits cleanly and is byte-identical across runs") {
  const RunResult a = run_cli({"audit", "--samples", "1000", "--seed", "1", "--tol", "1e-9"});
  REQUIRE(a.code == cli::kExitOk);
  const RunResult b = run_cli({"audit", "--samples", "1000", "--seed", "1", "--tol", "1e-9"});
  CHECK(a.out == b.out);
  const Json j = parse_json_text(a.out);
  CHECK(j["sign_resolution"] == "plus");
  CHECK(j["config"]["samples"] == 1000);

  const RunResult csv = run_cli({"audit", "--samples", "20", "--format", "csv"});
  CHECK(csv.code == cli::kExitOk);
  std::istringstream lines(csv.out);
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) {
    if (!line.empty() && line[0] != '#') ++rows;
  }
  CHECK(rows == 21);

  const RunResult tight = run_cli({"audit", "--samples", "20", "--tol", "1e-16"});
  CHECK(tight.code == cli::kExitViolation);
}

TEST_CASE("certify and check-cert") {
  const fs::path cert = scratch_dir() / "cert.json";
  const RunResult c = run_cli({"certify", "--margin", "0.2", "--out", cert.string()});
  REQUIRE(c.code == cli::kExitOk);
  const Json summary = parse_json_text(c.out);
  CHECK(summary["complete"] == true);
  CHECK(summary["c_star"].get<double>() > 0.0);

  const RunResult ok = run_cli({"check-cert", cert.string()});
  CHECK(ok.code == cli::kExitOk);
  CHECK(parse_json_text(ok.out)["verified"] == true);

  Json doc = read_json_file(cert.string());
  doc["leaves"][0]["lower_bound"] = doc["leaves"][0]["lower_bound"].get<double>() * 10 + 1.0;
  const fs::path tampered = scratch_dir() / "tampered.json";
  write_file(tampered, dump_json(doc));
  const RunResult bad = run_cli({"check-cert", tampered.string()});
  CHECK(bad.code == cli::kExitViolation);
  CHECK(parse_json_text(bad.out)["verified"] == false);

  Json broken = read_json_file(cert.string());
  broken.erase("c_star");
  write_file(tampered, dump_json(broken));
  CHECK(run_cli({"check-cert", tampered.string()}).code == cli::kExitViolation);

  write_file(tampered, "{ not json");
  const RunResult syntax = run_cli({"check-cert", tampered.string()});
  CHECK(syntax.code == cli::kExitUsage);
  CHECK(syntax.err.find("malformed input") != std::string::npos);

  const RunResult incomplete = run_cli({"certify", "--margin", "0.2", "--max-boxes", "3"});
  CHECK(incomplete.code == cli::kExitViolation);

  const RunResult csv = run_cli({"certify", "--margin", "0.2", "--max-boxes", "3", "--format", "csv"});
  CHECK(csv.out.rfind("# quadineq", 0) == 0);
}

TEST_CASE("search reports a decreasing schedule") {
  const RunResult r = run_cli({"search", "--starts", "8", "--margin", "0.05,0.005,0.0005", "--budget", "1500"});
  REQUIRE(r.code == cli::kExitOk);
  const Json j = parse_json_text(r.out);
  CHECK(j["counterexample_candidate"] == false);
  CHECK(j["schedule"].size() == 3);
  CHECK(j["schedule_decreasing"] == true);
  const RunResult again = run_cli({"search", "--starts", "8", "--margin", "0.05,0.005,0.0005", "--budget", "1500"});
  CHECK(r.out == again.out);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli({}).code == cli::kExitUsage);
  CHECK(run_cli({"bogus"}).code == cli::kExitUsage);
  CHECK(run_cli({"eval"}).code == cli::kExitUsage);
  CHECK(run_cli({"eval", "--points", kSquare, "--frame", "{\"p\": [1,1,1,1], \"w\": 1}"}).code == cli::kExitUsage);
  CHECK(run_cli({"eval", "--points", "[[0,0],[1,0]"}).code == cli::kExitUsage);
  CHECK(run_cli({"eval", "--points", kSquare, "--format", "csv"}).code == cli::kExitUsage);
  CHECK(run_cli({"audit", "--samples", "0"}).code == cli::kExitUsage);
  CHECK(run_cli({"certify", "--margin", "0.5"}).code == cli::kExitUsage);
  CHECK(run_cli({"check-cert"}).code == cli::kExitUsage);
  CHECK(run_cli({"--help"}).code == cli::kExitOk);
}

TEST_CASE("remove scratch files") { CHECK(fs::remove_all(scratch_dir()) > 0); }
