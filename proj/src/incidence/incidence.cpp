#include "jointlab/incidence.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace jointlab {

namespace {

template <class T>
std::vector<T> sorted_unique(std::span<const T> in) {
  std::vector<T> out(in.begin(), in.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Lines through a common point are coplanar iff their directions are dependent.
bool directions_span_space(const std::vector<Vec3>& dirs) {
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    for (std::size_t j = i + 1; j < dirs.size(); ++j) {
      const Vec3 n = cross(dirs[i], dirs[j]);
      if (n.is_zero()) continue;
      for (const auto& d : dirs) {
        if (sgn(dot(n, d)) != 0) return true;
      }
      return false;
    }
  }
  return false;
}

}  // namespace

IncidenceStructure build(std::span<const Point3> points, std::span<const Line3> lines) {
  IncidenceStructure s;
  s.points_ = sorted_unique(points);
  s.lines_ = sorted_unique(lines);
  s.incidence_.assign(s.points_.size(), {});
  s.richness_.assign(s.lines_.size(), 0);
  for (std::size_t i = 0; i < s.points_.size(); ++i) {
    for (std::size_t j = 0; j < s.lines_.size(); ++j) {
      if (point_on_line(s.points_[i], s.lines_[j])) {
        s.incidence_[i].push_back(j);
        ++s.richness_[j];
        ++s.total_;
      }
    }
  }
  return s;
}

std::size_t count_incidences_brute(std::span<const Point3> points, std::span<const Line3> lines) {
  std::size_t n = 0;
  for (const auto& a : points) {
    for (const auto& l : lines) n += point_on_line(a, l) ? 1 : 0;
  }
  return n;
}

std::vector<Point3> joints(std::span<const Line3> lines_in) {
  const std::vector<Line3> lines = sorted_unique(lines_in);
  std::map<Point3, std::set<std::size_t>> meets;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const LineMeet m = line_intersection(lines[i], lines[j]);
      if (m.kind != LineMeet::Kind::Point) continue;
      auto& through = meets[m.point];
      through.insert(i);
      through.insert(j);
    }
  }
  std::vector<Point3> out;
  for (const auto& [point, through] : meets) {
    if (through.size() < 3) continue;
    std::vector<Vec3> dirs;
    for (std::size_t idx : through) dirs.push_back(lines[idx].direction.to_vec());
    if (directions_span_space(dirs)) out.push_back(point);
  }
  return out;
}

std::size_t MultiplicityHistogram::points_with_at_least(std::size_t k) const {
  if (k == 0) k = 1;
  return k <= points_at_least.size() ? points_at_least[k - 1] : 0;
}

std::size_t MultiplicityHistogram::incidences_with_at_least(std::size_t k) const {
  if (k == 0) k = 1;
  return k <= incidences_at_least.size() ? incidences_at_least[k - 1] : 0;
}

MultiplicityHistogram histogram(const IncidenceStructure& s) {
  std::size_t top = 0;
  for (std::size_t i = 0; i < s.points().size(); ++i) top = std::max(top, s.multiplicity(i));
  MultiplicityHistogram h;
  h.points_at_least.assign(top + 1, 0);
  h.incidences_at_least.assign(top + 1, 0);
  for (std::size_t i = 0; i < s.points().size(); ++i) {
    const std::size_t mu = s.multiplicity(i);
    for (std::size_t k = 1; k <= mu; ++k) {
      ++h.points_at_least[k - 1];
      h.incidences_at_least[k - 1] += mu;
    }
  }
  return h;
}

}  // namespace jointlab
