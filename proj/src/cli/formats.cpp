#include "jointlab/cli.hpp"
#include "jointlab/errors.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>
#include <tuple>

namespace jointlab::cli {

namespace {

struct Record {
  std::size_t line_no;
  std::vector<std::string> words;
};

// Non-empty, comment-stripped lines split on whitespace.
std::vector<Record> records(std::string_view text) {
  std::vector<Record> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::istringstream in{std::string(line)};
    Record r{line_no, {}};
    for (std::string w; in >> w;) r.words.push_back(std::move(w));
    if (!r.words.empty()) out.push_back(std::move(r));
    pos = end + 1;
  }
  return out;
}

Rational scalar(const Record& r, std::size_t k) {
  auto q = parse_rational(r.words[k]);
  if (!q) throw ParseError(r.line_no, "malformed scalar '" + r.words[k] + "'");
  return *q;
}

int exponent(const Record& r, std::size_t k) {
  const std::string& w = r.words[k];
  int e = 0;
  auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), e);
  if (ec != std::errc() || ptr != w.data() + w.size() || e < 0) {
    throw ParseError(r.line_no, "malformed exponent '" + w + "'");
  }
  return e;
}

void expect_arity(const Record& r, std::size_t n) {
  if (r.words.size() != n) {
    throw ParseError(r.line_no, "'" + r.words[0] + "' takes " + std::to_string(n - 1) + " values, got " +
                                    std::to_string(r.words.size() - 1));
  }
}

std::string join3(const Rational& a, const Rational& b, const Rational& c) {
  return to_string(a) + " " + to_string(b) + " " + to_string(c);
}

}  // namespace

Instance parse_instance(std::string_view text) {
  std::set<Point3> points;
  std::set<Line3> lines;
  for (const auto& r : records(text)) {
    if (r.words[0] == "point") {
      expect_arity(r, 4);
      points.insert({scalar(r, 1), scalar(r, 2), scalar(r, 3)});
    } else if (r.words[0] == "line") {
      expect_arity(r, 7);
      const Vec3 anchor{scalar(r, 1), scalar(r, 2), scalar(r, 3)};
      const Vec3 dir{scalar(r, 4), scalar(r, 5), scalar(r, 6)};
      if (dir.is_zero()) throw ParseError(r.line_no, "line direction is zero");
      lines.insert(canonicalize_line(anchor, dir));
    } else {
      throw ParseError(r.line_no, "unknown record '" + r.words[0] + "'");
    }
  }
  return Instance{{points.begin(), points.end()}, {lines.begin(), lines.end()}};
}

std::string serialize_instance(const Instance& inst) {
  std::string out;
  for (const auto& l : inst.lines) {
    const Vec3 d = l.direction.to_vec();
    out += "line " + join3(l.anchor.x, l.anchor.y, l.anchor.z) + " " + join3(d.x, d.y, d.z) + "\n";
  }
  for (const auto& a : inst.points) out += "point " + join3(a.x, a.y, a.z) + "\n";
  return out;
}

std::string serialize_generated(const GeneratedInstance& g) {
  std::string out = "# " + g.label + "\n";
  out += "# predicted: lines " + std::to_string(g.predicted.lines) + "\n";
  out += "# predicted: points " + std::to_string(g.predicted.points) + "\n";
  out += "# predicted: joints " + std::to_string(g.predicted.joints) + "\n";
  out += "# predicted: incidences " + std::to_string(g.predicted.incidences) + "\n";
  for (const auto& [k, v] : g.report) out += "# report: " + k + " " + v + "\n";
  return out + serialize_instance(g.instance);
}

MultiPoly3 parse_poly(std::string_view text) {
  MultiPoly3 p;
  std::set<std::tuple<int, int, int>> seen;
  for (const auto& r : records(text)) {
    if (r.words[0] != "term") throw ParseError(r.line_no, "unknown record '" + r.words[0] + "'");
    expect_arity(r, 5);
    const Rational c = scalar(r, 1);
    if (sgn(c) == 0) throw ParseError(r.line_no, "zero coefficient");
    const Monomial m{exponent(r, 2), exponent(r, 3), exponent(r, 4)};
    if (!seen.insert({m.x, m.y, m.z}).second) throw ParseError(r.line_no, "repeated exponent triple");
    p.add_term(m, c);
  }
  return p;
}

std::string serialize_poly(const MultiPoly3& p) {
  std::string out;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const Monomial& m = it->first;
    out += "term " + to_string(it->second) + " " + std::to_string(m.x) + " " + std::to_string(m.y) + " " +
           std::to_string(m.z) + "\n";
  }
  return out;
}

}  // namespace jointlab::cli
