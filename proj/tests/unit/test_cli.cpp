#include "jointlab/cli.hpp"
#include "jointlab/errors.hpp"
#include "support.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace jointlab;
using namespace jointlab::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Writes text to a fresh file under the temp directory and returns its path.
std::string temp_file(const std::string& name, const std::string& text) {
  const fs::path dir = fs::temp_directory_path() / "jointlab_cli_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string golden(const std::string& name) { return slurp(fs::path(JOINTLAB_GOLDEN_DIR) / name); }

}  // namespace

TEST_CASE("instance round trip") {
  jointlab::testing::Random rng(61);
  for (int trial = 0; trial < 50; ++trial) {
    std::string text = "# random instance\n";
    const long np = rng.integer(0, 12), nl = rng.integer(0, 12);
    for (long i = 0; i < np; ++i) {
      const Point3 a = rng.rational_point(4);
      text += "point " + to_string(a.x) + " " + to_string(a.y) + " " + to_string(a.z) + "\n";
      if (rng.coin()) text += "point " + to_string(a.x) + " " + to_string(a.y) + " " + to_string(a.z) + "  # again\n";
    }
    for (long i = 0; i < nl; ++i) {
      const Point3 a = rng.rational_point(4);
      const Vec3 d = rng.rational() == 0 ? rng.nonzero_direction() : rng.rational_point(3);
      if (d.is_zero()) continue;
      text += "line " + to_string(a.x) + " " + to_string(a.y) + " " + to_string(a.z) + " " + to_string(d.x) + " " +
              to_string(d.y) + " " + to_string(d.z) + "\n";
    }
    const Instance once = parse_instance(text);
    const std::string s = serialize_instance(once);
    const Instance twice = parse_instance(s);
    CHECK(twice.points == once.points);
    CHECK(twice.lines == once.lines);
    CHECK(serialize_instance(twice) == s);
    CHECK(once.points.size() <= static_cast<std::size_t>(np));
  }
}

TEST_CASE("polynomial round trip") {
  jointlab::testing::Random rng(67);
  for (int trial = 0; trial < 30; ++trial) {
    const MultiPoly3 p = rng.poly(4, 6) * MultiPoly3(rng.rational(3, 5) + 7);
    CHECK(parse_poly(serialize_poly(p)) == p);
  }
  CHECK_THROWS_AS(parse_poly("term 0 1 0 0\n"), ParseError);
  CHECK_THROWS_AS(parse_poly("term 1 1 0 0\nterm 2 1 0 0\n"), ParseError);
  CHECK_THROWS_AS(parse_poly("term 1 -1 0 0\n"), ParseError);
}

TEST_CASE("parse errors carry the line number") {
  try {
    parse_instance("point 0 0 0\n# comment\npoint 1/0 2 3\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3: malformed scalar '1/0'") != std::string::npos);
  }
  const std::string bad = temp_file("bad.txt", "point 1 2\n");
  const Result r = call({"count", bad});
  CHECK(r.code == kParse);
  CHECK(r.out.empty());
  CHECK(r.err.find("line 1:") != std::string::npos);
  CHECK_THROWS_AS(parse_instance("line 0 0 0 0 0 0\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("plane 1 2 3 4\n"), ParseError);
}

TEST_CASE("generator output") {
  Result r = call({"gen", "grid", "--k", "2"});
  CHECK(r.code == kOk);
  CHECK(r.out == golden("gen_grid_k2.txt"));
  CHECK(r.out.find("# predicted: joints 8") != std::string::npos);

  r = call({"gen", "paraboloid", "--r", "3"});
  CHECK(r.out == golden("gen_paraboloid_r3.txt"));

  r = call({"gen", "paraboloid", "--r", "1"});
  const Instance one = parse_instance(r.out);
  CHECK(one.lines.size() == 2);
  CHECK(one.points.size() == 1);

  r = call({"gen", "st", "--n", "2"});
  const Instance st = parse_instance(r.out);
  CHECK(st.lines.size() == 8);
  CHECK(st.points.size() == 16);
  CHECK(r.out.find("# predicted: incidences 16") != std::string::npos);

  CHECK(call({"gen", "grid", "--k", "0"}).code == kUsage);
  CHECK(call({"gen", "hexagon"}).code == kUsage);
}

TEST_CASE("counting commands") {
  const std::string grid = temp_file("grid2.txt", call({"gen", "grid", "--k", "2"}).out);
  Result r = call({"count", grid});
  CHECK(r.out == "lines\t12\npoints\t8\nincidences\t24\n");
  r = call({"joints", grid});
  CHECK(r.out.rfind("joints\t8\njoint\t1 1 1\n", 0) == 0);
  r = call({"planecover", grid});
  CHECK(r.out.find("plane_cover_sum\t16") != std::string::npos);
  r = call({"histogram", grid, "--tsv"});
  CHECK(r.out.find("3\t8\t24\n") != std::string::npos);
  r = call({"check", grid});
  CHECK(r.out.find("three_lines_per_point\tholds") != std::string::npos);

  const std::string empty = temp_file("empty.txt", "# nothing here\n");
  CHECK(call({"count", empty}).out == "lines\t0\npoints\t0\nincidences\t0\n");
  CHECK(call({"joints", empty}).out == "joints\t0\n");
  CHECK(call({"planecover", empty}).out == "points\t0\nincidences\t0\nplane_cover_sum\t0\n");
}

TEST_CASE("fitting and classification") {
  const std::string three = temp_file("three.txt", "point 0 0 0\npoint 1 0 0\npoint 0 1 0\n");
  Result r = call({"fit", three});
  CHECK(r.code == kOk);
  CHECK(r.out == "term 1 0 0 1\n");

  const std::string grid = temp_file("grid3.txt", call({"gen", "grid", "--k", "3"}).out);
  const std::string poly = temp_file("grid3.poly", call({"fit", grid}).out);
  CHECK(parse_poly(slurp(poly)).degree() == 3);
  r = call({"classify", grid, poly});
  CHECK(r.code == kOk);
  std::istringstream rows(r.out);
  std::size_t points = 0;
  for (std::string row; std::getline(rows, row);) {
    if (row.rfind("point:", 0) != 0) continue;
    ++points;
    const bool ok = row.find("\tcritical\t") != std::string::npos || row.find("\tflat\t") != std::string::npos;
    CAPTURE(row);
    CHECK(ok);
  }
  CHECK(points == 27);

  const std::string zero = temp_file("zero.poly", "");
  CHECK(call({"classify", grid, zero}).code == kPrecondition);
}

TEST_CASE("trace command") {
  const std::string grid3 = temp_file("grid3.txt", call({"gen", "grid", "--k", "3"}).out);
  const Result a = call({"trace", "thm9", grid3, "--seed", "7"});
  const Result b = call({"trace", "thm9", grid3, "--seed", "7"});
  CHECK(a.code == kOk);
  CHECK(a.out == b.out);
  CHECK(a.out == golden("trace_point_count_grid3_seed7.txt"));

  const std::string grid4 = temp_file("grid4.txt", call({"gen", "grid", "--k", "4"}).out);
  const Result s = call({"trace", "thm9", grid4, "--seed", "7", "--c", "1/2", "--t", "1/2", "--n0", "2",
                         "--unchecked-config"});
  CHECK(s.code == kOk);
  CHECK(s.out == golden("trace_point_count_grid4_seed7_small.txt"));
}

TEST_CASE("exit codes") {
  const std::string grid = temp_file("grid3.txt", call({"gen", "grid", "--k", "3"}).out);
  const std::string par = temp_file("par.txt", call({"gen", "paraboloid", "--r", "3"}).out);
  CHECK(call({}).code == kUsage);
  CHECK(call({"frobnicate"}).code == kUsage);
  CHECK(call({"count", "/nonexistent/file"}).code == kUsage);
  CHECK(call({"count", "--help"}).code == kOk);
  CHECK(call({"trace", "thm9", par}).code == kHypothesis);
  const Result cfg = call({"trace", "thm9", grid, "--t", "1/2"});
  CHECK(cfg.code == kConfig);
  CHECK(cfg.out.empty());
  CHECK(call({"trace", "thm9", grid, "--t", "abc"}).code == kUsage);
  CHECK(call({"trace", "thm12", grid}).code == kUsage);
  CHECK(call({"trace", "thm11", grid, "--t", "1/2", "--unchecked-config"}).code == kOk);
}

TEST_CASE("trace kinds have role-named aliases") {
  const std::string grid = temp_file("grid3.txt", call({"gen", "grid", "--k", "3"}).out);
  CHECK(call({"trace", "point-count", grid, "--seed", "7"}).out == call({"trace", "thm9", grid, "--seed", "7"}).out);
  CHECK(call({"trace", "incidence-count", grid}).out == call({"trace", "thm11", grid}).out);
  CHECK(call({"trace", "light-heavy", grid}).out == call({"trace", "bourgain", grid}).out);
}
