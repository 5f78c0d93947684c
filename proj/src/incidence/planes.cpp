#include "jointlab/errors.hpp"
#include "jointlab/incidence.hpp"

#include <algorithm>
#include <bitset>
#include <cstdint>
#include <map>
#include <numeric>

namespace jointlab {

namespace {

std::int64_t abs_value(std::int64_t v) { return v < 0 ? -v : v; }
Integer abs_value(const Integer& v) { return abs(v); }
std::int64_t gcd_value(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }
Integer gcd_value(const Integer& a, const Integer& b) { return gcd(a, b); }
int sign_of(std::int64_t v) { return (v > 0) - (v < 0); }
int sign_of(const Integer& v) { return sgn(v); }

template <class T>
using Triple = std::array<T, 3>;

template <class T>
Triple<T> primitive_normal(const Triple<T>& u, const Triple<T>& w) {
  Triple<T> n{u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0]};
  T g = gcd_value(gcd_value(abs_value(n[0]), abs_value(n[1])), abs_value(n[2]));
  if (sign_of(g) == 0) return n;
  int s = 0;
  for (const auto& c : n) {
    if (sign_of(c) != 0) {
      s = sign_of(c);
      break;
    }
  }
  if (s < 0) g = -g;
  for (auto& c : n) c /= g;
  return n;
}

struct Best {
  std::size_t count = 0;
  std::optional<Plane3> plane;

  void offer(std::size_t c, const Vec3& normal, const Point3& through) {
    if (c < count) return;
    Plane3 pi = plane_from_normal(normal, through);
    if (c > count || !plane || pi < *plane) {
      count = c;
      plane = std::move(pi);
    }
  }
};

// For each pair (i, j), planes through both are keyed by normal among the
// later points. The two smallest indices of any plane pick it up in full.
template <class T>
Best scan_pairs(const std::vector<Triple<T>>& q, const std::vector<Point3>& pts) {
  Best best;
  const std::size_t m = q.size();
  std::map<Triple<T>, std::size_t> groups;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const Triple<T> u{q[j][0] - q[i][0], q[j][1] - q[i][1], q[j][2] - q[i][2]};
      std::size_t on_line = 0;
      groups.clear();
      for (std::size_t k = j + 1; k < m; ++k) {
        const Triple<T> w{q[k][0] - q[i][0], q[k][1] - q[i][1], q[k][2] - q[i][2]};
        Triple<T> n = primitive_normal(u, w);
        if (sign_of(n[0]) == 0 && sign_of(n[1]) == 0 && sign_of(n[2]) == 0) {
          ++on_line;
        } else {
          ++groups[n];
        }
      }
      for (const auto& [n, c] : groups) {
        const std::size_t total = 2 + on_line + c;
        if (total < best.count) continue;
        best.offer(total, {Rational(n[0]), Rational(n[1]), Rational(n[2])}, pts[i]);
      }
    }
  }
  return best;
}

}  // namespace

RichestPlane richest_plane(std::span<const Point3> points_in) {
  std::vector<Point3> pts(points_in.begin(), points_in.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t m = pts.size();
  if (m > kRichestPlaneLimit) {
    throw PreconditionError("richest_plane is limited to " + std::to_string(kRichestPlaneLimit) +
                            " points, got " + std::to_string(m));
  }
  RichestPlane out;
  out.count = m;
  if (m < 3) return out;

  std::vector<Rational> coords;
  for (const auto& p : pts) {
    coords.push_back(p.x);
    coords.push_back(p.y);
    coords.push_back(p.z);
  }
  const Integer scale = lcm_of_denominators(coords);
  std::vector<Triple<Integer>> big;
  bool small = true;
  const Integer limit = Integer(1) << 20;
  for (const auto& p : pts) {
    Triple<Integer> t;
    for (std::size_t c = 0; c < 3; ++c) {
      t[c] = p[c].get_num() * (scale / p[c].get_den());
      if (abs(t[c]) >= limit) small = false;
    }
    big.push_back(std::move(t));
  }

  Best best;
  if (small) {
    std::vector<Triple<std::int64_t>> q;
    for (const auto& t : big) q.push_back({t[0].get_si(), t[1].get_si(), t[2].get_si()});
    best = scan_pairs(q, pts);
  } else {
    best = scan_pairs(big, pts);
  }
  if (!best.plane) {
    out.kind = RichestPlane::Kind::Collinear;
    return out;
  }
  out.kind = RichestPlane::Kind::Plane;
  out.plane = best.plane;
  out.count = best.count;
  return out;
}

PlaneOfLines richest_plane_of_lines(std::span<const Line3> lines_in) {
  std::vector<Line3> lines(lines_in.begin(), lines_in.end());
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  PlaneOfLines out;
  if (lines.empty()) return out;
  std::map<Plane3, std::vector<bool>> members;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      auto pi = plane_of_lines(lines[i], lines[j]);
      if (!pi) continue;
      auto& mark = members[*pi];
      if (mark.empty()) mark.assign(lines.size(), false);
      mark[i] = true;
      mark[j] = true;
    }
  }
  for (const auto& [pi, mark] : members) {
    const auto c = static_cast<std::size_t>(std::count(mark.begin(), mark.end(), true));
    if (c > out.count) {
      out.count = c;
      out.plane = pi;
    }
  }
  if (!out.plane) {
    // No coplanar pair: any plane through the first line holds exactly one.
    const Line3& l = lines.front();
    Vec3 other = cross(l.direction.to_vec(), Vec3(1, 0, 0));
    if (other.is_zero()) other = cross(l.direction.to_vec(), Vec3(0, 1, 0));
    out.plane = plane_from_normal(other, l.anchor);
    out.count = 1;
  }
  return out;
}

namespace {

constexpr std::size_t kCoverLimit = 256;
using LineMask = std::bitset<kCoverLimit>;

struct CoverSearch {
  std::size_t n = 0;
  std::vector<LineMask> planes;
  std::size_t best = 0;

  void run(const LineMask& covered, std::size_t used) {
    if (used >= best) return;
    std::size_t first = 0;
    while (first < n && covered[first]) ++first;
    if (first == n) {
      best = used;
      return;
    }
    if (used + 1 >= best) return;
    for (const auto& pl : planes) {
      if (pl[first]) run(covered | pl, used + 1);
    }
  }
};

}  // namespace

std::size_t plane_cover(const Point3& a, std::span<const Line3> lines_in) {
  std::vector<Line3> lines(lines_in.begin(), lines_in.end());
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  for (const auto& l : lines) {
    if (!point_on_line(a, l)) {
      throw PreconditionError("plane_cover: " + to_string(l) + " misses " + to_string(a));
    }
  }
  const std::size_t n = lines.size();
  if (n <= 2) return n == 0 ? 0 : 1;
  if (n > kCoverLimit) throw PreconditionError("plane_cover supports at most 256 lines per point");

  std::vector<Vec3> dirs;
  for (const auto& l : lines) dirs.push_back(l.direction.to_vec());
  std::map<IVec3, LineMask> by_normal;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const IVec3 normal = primitive_direction(cross(dirs[i], dirs[j]));
      if (by_normal.count(normal)) continue;
      const Vec3 nv = normal.to_vec();
      LineMask mask;
      for (std::size_t k = 0; k < n; ++k) {
        if (sgn(dot(nv, dirs[k])) == 0) mask.set(k);
      }
      by_normal.emplace(normal, mask);
    }
  }
  CoverSearch search;
  search.n = n;
  for (const auto& [normal, mask] : by_normal) search.planes.push_back(mask);
  std::sort(search.planes.begin(), search.planes.end(),
            [](const LineMask& x, const LineMask& y) { return x.count() > y.count(); });
  if (search.planes.front().count() == n) return 1;
  search.best = n;
  search.run(LineMask{}, 0);
  return search.best;
}

std::size_t plane_cover_sum(const IncidenceStructure& s) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < s.points().size(); ++i) {
    std::vector<Line3> through;
    for (std::size_t j : s.lines_at(i)) through.push_back(s.lines()[j]);
    total += plane_cover(s.points()[i], through);
  }
  return total;
}

ConditionReport check_conditions(const IncidenceStructure& s, const Rational& b) {
  ConditionReport r;
  r.richest = richest_plane(s.points());
  r.plane_limit = b * Rational(static_cast<unsigned long>(s.lines().size()));
  r.few_per_plane = Rational(static_cast<unsigned long>(r.richest.count)) <= r.plane_limit;
  r.three_per_point = true;
  for (std::size_t i = 0; i < s.points().size(); ++i) {
    const std::size_t mu = s.multiplicity(i);
    if (i == 0 || mu < r.min_multiplicity) r.min_multiplicity = mu;
    if (mu < 3 && r.three_per_point) {
      r.three_per_point = false;
      r.low_multiplicity_witness = s.points()[i];
    }
  }
  return r;
}

}  // namespace jointlab
