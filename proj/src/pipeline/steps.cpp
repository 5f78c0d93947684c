#include "steps.hpp"

#include "jointlab/errors.hpp"

namespace jointlab::steps {

LiveIncidence::LiveIncidence(const IncidenceStructure& s)
    : s_(&s),
      points_on_(s.lines().size()),
      point_alive_(s.points().size(), true),
      line_alive_(s.lines().size(), true),
      mu_(s.points().size()),
      nu_(s.lines().size()) {
  for (std::size_t i = 0; i < s.points().size(); ++i) {
    mu_[i] = s.multiplicity(i);
    for (std::size_t j : s.lines_at(i)) points_on_[j].push_back(i);
  }
  for (std::size_t j = 0; j < s.lines().size(); ++j) nu_[j] = points_on_[j].size();
  total_ = s.incidences();
  alive_points_ = s.points().size();
  alive_lines_ = s.lines().size();
}

std::size_t LiveIncidence::remove_line(std::size_t j) {
  if (!line_alive_[j]) return 0;
  std::size_t lost = 0;
  for (std::size_t i : points_on_[j]) {
    if (!point_alive_[i]) continue;
    --mu_[i];
    ++lost;
  }
  nu_[j] = 0;
  line_alive_[j] = false;
  --alive_lines_;
  total_ -= lost;
  return lost;
}

std::size_t LiveIncidence::remove_point(std::size_t i) {
  if (!point_alive_[i]) return 0;
  std::size_t lost = 0;
  for (std::size_t j : s_->lines_at(i)) {
    if (!line_alive_[j]) continue;
    --nu_[j];
    ++lost;
  }
  mu_[i] = 0;
  point_alive_[i] = false;
  --alive_points_;
  total_ -= lost;
  return lost;
}

std::size_t LiveIncidence::recount() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < s_->points().size(); ++i) {
    if (!point_alive_[i]) continue;
    for (std::size_t j : s_->lines_at(i)) n += line_alive_[j] ? 1 : 0;
  }
  return n;
}

Instance LiveIncidence::snapshot() const {
  Instance out;
  for (std::size_t i = 0; i < s_->points().size(); ++i) {
    if (point_alive_[i]) out.points.push_back(s_->points()[i]);
  }
  for (std::size_t j = 0; j < s_->lines().size(); ++j) {
    if (line_alive_[j]) out.lines.push_back(s_->lines()[j]);
  }
  return out;
}

bool Sampler::draw(const Rational& t) {
  // u / 2^64 < t, decided exactly.
  const std::uint64_t u = rng_();
  Integer lhs(static_cast<unsigned long>(u >> 32));
  lhs <<= 32;
  lhs += static_cast<unsigned long>(u & 0xffffffffULL);
  lhs *= t.get_den();
  Integer rhs = t.get_num();
  rhs <<= 64;
  return lhs < rhs;
}

Rational from_count(std::size_t n) { return Rational(static_cast<unsigned long>(n)); }

std::vector<Point3> points_along(const Line3& l, std::size_t count) {
  std::vector<Point3> out;
  for (std::size_t s = 0; s < count; ++s) out.push_back(l.at(from_count(s)));
  return out;
}

std::size_t ceil_sqrt(std::size_t n) {
  std::size_t s = 0;
  while (s * s < n) ++s;
  return s;
}

PlaneSplit split_by_planes(const MultiPoly3& p, const LiveIncidence& live) {
  PlaneSplit out;
  LinearFactorization lf = linear_factors(p);
  out.planes = std::move(lf.planes);
  out.residual = std::move(lf.residual);
  const auto& s = live.base();
  out.line_in_plane.assign(s.lines().size(), false);
  out.point_in_plane.assign(s.points().size(), false);
  for (const auto& pi : out.planes) {
    for (std::size_t j = 0; j < s.lines().size(); ++j) {
      if (live.line_alive(j) && line_in_plane(s.lines()[j], pi)) out.line_in_plane[j] = true;
    }
    for (std::size_t i = 0; i < s.points().size(); ++i) {
      if (live.point_alive(i) && point_in_plane(s.points()[i], pi)) out.point_in_plane[i] = true;
    }
  }
  return out;
}

LineCensusCounts classify_lines(const Surface& s, const std::vector<Line3>& lines) {
  LineCensusCounts c;
  for (const auto& l : lines) {
    switch (s.classify_line(l)) {
      case LineKind::Crossing: ++c.crossing; break;
      case LineKind::CriticalLine: ++c.critical; break;
      case LineKind::FlatLine: ++c.flat; break;
      case LineKind::OrdinaryOnSurface: ++c.ordinary; break;
    }
  }
  return c;
}

void record_census(TraceRecord& r, const LineCensusCounts& c, int reduced_degree, int degree,
                   bool reduced_has_linear_factors) {
  const long dr = reduced_degree < 0 ? 0 : reduced_degree;
  const long d = degree < 0 ? 0 : degree;
  r.add("reduced_degree", reduced_degree);
  r.add("critical_lines", c.critical);
  r.add("flat_lines", c.flat);
  r.add("ordinary_lines", c.ordinary);
  r.add("crossing_lines", c.crossing);
  const Check crit = make_check("critical_lines_bound", from_count(c.critical), "<=", Rational(dr * (dr - 1)));
  const Check flat = make_check("flat_lines_bound", from_count(c.flat), "<=", Rational(dr * (3 * dr - 4) < 0 ? 0 : dr * (3 * dr - 4)));
  const Check both = make_check("special_lines_below_4d2", from_count(c.critical + c.flat), "<=", Rational(4 * d * d));
  r.checks.push_back(crit);
  r.checks.push_back(flat);
  r.checks.push_back(both);
  if (!crit.holds) throw InvariantError("critical line bound failed: " + serialize(r));
  if (!reduced_has_linear_factors && (!flat.holds || !both.holds)) {
    throw InvariantError("flat line bound failed: " + serialize(r));
  }
}

void add_fit_fields(TraceRecord& r, const MultiPoly3& p, std::size_t fitted_points) {
  r.add("fitted_points", fitted_points);
  r.add("degree", p.degree());
  r.add("poly", poly_digest(p));
  r.checks.push_back(make_check("degree_within_dimension_bound", Rational(p.degree()), "<=",
                                Rational(vanishing_degree_bound(fitted_points))));
  r.checks.push_back(make_check("degree_within_cbrt_bound", Rational(p.degree()), "<=",
                                Rational(ceil_cbrt(6 * from_count(fitted_points)))));
}

std::string join_planes(const std::vector<Plane3>& planes) {
  std::string out;
  for (const auto& pi : planes) {
    if (!out.empty()) out += ";";
    out += to_string(pi);
  }
  return out.empty() ? "none" : out;
}

HypothesisOutcome check_hypotheses(const IncidenceStructure& s, const Rational& b, int depth) {
  HypothesisOutcome h;
  TraceRecord& r = h.record;
  r.step = "hypotheses";
  r.depth = depth;
  const ConditionReport c = check_conditions(s, b);
  r.add("richest_plane", c.richest.plane ? to_string(*c.richest.plane)
                                         : std::string(c.richest.kind == RichestPlane::Kind::Collinear
                                                           ? "collinear"
                                                           : "too_few_points"));
  r.add("min_multiplicity", c.min_multiplicity);
  r.checks.push_back(make_check("points_per_plane", from_count(c.richest.count), "<=", c.plane_limit));
  if (!s.points().empty()) {
    r.checks.push_back(make_check("lines_per_point", from_count(c.min_multiplicity), ">=", 3));
  }
  if (!c.few_per_plane) {
    h.holds = false;
    h.witness = (c.richest.plane ? to_string(*c.richest.plane) : std::string("a plane")) + " holds " +
                std::to_string(c.richest.count) + " points, more than " + to_string(c.plane_limit);
  } else if (!c.three_per_point) {
    h.holds = false;
    h.witness = "point " + to_string(*c.low_multiplicity_witness) + " lies on only " +
                std::to_string(c.min_multiplicity) + " lines";
  }
  return h;
}

}  // namespace jointlab::steps
