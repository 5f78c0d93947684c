#include "jointlab/errors.hpp"
#include "jointlab/polymethod.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace jointlab {

LineCensus count_classified_lines(const MultiPoly3& p, std::span<const Line3> lines) {
  if (!is_squarefree(p)) throw PreconditionError("line census expects a square-free polynomial");
  LineCensus c;
  c.degree = p.degree();
  const long d = c.degree;
  c.critical_bound = d * (d - 1);
  c.flat_bound = 3 * d * d - 4 * d;
  c.has_linear_factors = !linear_factors(p).planes.empty();
  c.flat_bound_applies = !c.has_linear_factors;

  const Surface s(p);
  std::vector<Line3> distinct(lines.begin(), lines.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  for (const auto& l : distinct) {
    switch (s.classify_line(l)) {
      case LineKind::Crossing: ++c.crossing; break;
      case LineKind::CriticalLine: ++c.critical; break;
      case LineKind::FlatLine: ++c.flat; break;
      case LineKind::OrdinaryOnSurface: ++c.ordinary; break;
    }
  }
  if (static_cast<long>(c.critical) > c.critical_bound) {
    throw InvariantError("critical lines " + std::to_string(c.critical) + " exceed d(d-1) = " +
                         std::to_string(c.critical_bound));
  }
  c.flat_within_bound = static_cast<long>(c.flat) <= c.flat_bound;
  if (c.flat_bound_applies && !c.flat_within_bound) {
    throw InvariantError("flat lines " + std::to_string(c.flat) + " exceed 3d^2 - 4d = " +
                         std::to_string(c.flat_bound));
  }
  return c;
}

SurfaceLineCensus surface_line_census(const MultiPoly3& p, std::span<const Line3> lines) {
  if (!is_squarefree(p)) throw PreconditionError("surface census expects a square-free polynomial");
  if (!linear_factors(p).planes.empty()) {
    throw PreconditionError("surface census expects a polynomial without linear factors");
  }
  SurfaceLineCensus out;
  std::vector<Line3> distinct(lines.begin(), lines.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  std::vector<Line3> on;
  for (const auto& l : distinct) {
    if (vanishes_on_line(p, l)) on.push_back(l);
  }
  out.lines_on_surface = on.size();
  out.lines_off_surface = distinct.size() - on.size();

  std::map<Point3, std::set<std::size_t>> meets;
  for (std::size_t i = 0; i < on.size(); ++i) {
    for (std::size_t j = i + 1; j < on.size(); ++j) {
      const LineMeet m = line_intersection(on[i], on[j]);
      if (m.kind != LineMeet::Kind::Point) continue;
      meets[m.point].insert(i);
      meets[m.point].insert(j);
    }
  }
  for (const auto& [a, through] : meets) {
    if (through.size() < 3) continue;
    out.points.push_back(a);
    out.incidences += through.size();
  }
  out.lines = count_classified_lines(p, distinct);
  const long d = p.degree();
  out.nd = static_cast<long>(distinct.size()) * d;
  out.d_cubed = d * d * d;
  return out;
}

}  // namespace jointlab
