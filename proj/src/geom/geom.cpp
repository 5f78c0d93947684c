#include "jointlab/geom.hpp"

#include "jointlab/errors.hpp"

namespace jointlab {

std::size_t IVec3::first_nonzero() const {
  if (sgn(x) != 0) return 0;
  if (sgn(y) != 0) return 1;
  if (sgn(z) != 0) return 2;
  return 3;
}

IVec3 primitive_direction(const Vec3& v) {
  if (v.is_zero()) throw DegenerateInputError("zero direction vector");
  auto ints = primitive_integers({v.x, v.y, v.z});
  return {ints[0], ints[1], ints[2]};
}

std::string to_string(const IVec3& v) {
  return "(" + v.x.get_str() + "," + v.y.get_str() + "," + v.z.get_str() + ")";
}

Line3 canonicalize_line(const Point3& point, const Vec3& dir) {
  IVec3 d = primitive_direction(dir);
  const std::size_t i = d.first_nonzero();
  const Rational t = point[i] / Rational(d[i]);
  return {point - t * d.to_vec(), std::move(d)};
}

Line3 line_through(const Point3& a, const Point3& b) { return canonicalize_line(a, b - a); }

Plane3 plane_from_normal(const Vec3& normal, const Point3& on_plane) {
  IVec3 n = primitive_direction(normal);
  Rational offset = -dot(n.to_vec(), on_plane);
  return {std::move(n), std::move(offset)};
}

bool point_on_line(const Point3& a, const Line3& l) {
  return cross(a - l.anchor, l.direction.to_vec()).is_zero();
}

bool lines_parallel(const Line3& l1, const Line3& l2) { return l1.direction == l2.direction; }

bool lines_coplanar(const Line3& l1, const Line3& l2) {
  // Homogeneous coordinates of two points on each line; the four points are
  // coplanar iff the determinant vanishes.
  const Point3 p[4] = {l1.anchor, l1.anchor + l1.direction.to_vec(), l2.anchor,
                       l2.anchor + l2.direction.to_vec()};
  Mat m(4, 4);
  for (std::size_t r = 0; r < 4; ++r) {
    m(r, 0) = p[r].x;
    m(r, 1) = p[r].y;
    m(r, 2) = p[r].z;
    m(r, 3) = 1;
  }
  return sgn(det4(m)) == 0;
}

LineMeet line_intersection(const Line3& l1, const Line3& l2) {
  if (l1 == l2) return {LineMeet::Kind::SameLine, {}};
  if (lines_parallel(l1, l2)) return {};
  if (!lines_coplanar(l1, l2)) return {};
  const Vec3 d1 = l1.direction.to_vec();
  const Vec3 d2 = l2.direction.to_vec();
  const Vec3 n = cross(d1, d2);
  const Rational s = dot(cross(l2.anchor - l1.anchor, d2), n) / dot(n, n);
  return {LineMeet::Kind::Point, l1.at(s)};
}

std::optional<Plane3> plane_through(const Point3& a, const Point3& b, const Point3& c) {
  const Vec3 n = cross(b - a, c - a);
  if (n.is_zero()) return std::nullopt;
  return plane_from_normal(n, a);
}

std::optional<Plane3> plane_of_lines(const Line3& l1, const Line3& l2) {
  if (l1 == l2 || !lines_coplanar(l1, l2)) return std::nullopt;
  if (lines_parallel(l1, l2)) {
    return plane_from_normal(cross(l1.direction.to_vec(), l2.anchor - l1.anchor), l1.anchor);
  }
  return plane_from_normal(cross(l1.direction.to_vec(), l2.direction.to_vec()), l1.anchor);
}

Rational plane_value(const Plane3& pi, const Point3& u) {
  return dot(pi.normal.to_vec(), u) + pi.offset;
}

bool point_in_plane(const Point3& a, const Plane3& pi) { return sgn(plane_value(pi, a)) == 0; }

bool line_in_plane(const Line3& l, const Plane3& pi) {
  return point_in_plane(l.anchor, pi) && sgn(dot(pi.normal.to_vec(), l.direction.to_vec())) == 0;
}

bool directions_independent(const IVec3& a, const IVec3& b, const IVec3& c) {
  const Integer det = a.x * (b.y * c.z - b.z * c.y) - a.y * (b.x * c.z - b.z * c.x) +
                      a.z * (b.x * c.y - b.y * c.x);
  return sgn(det) != 0;
}

std::string to_string(const Line3& l) {
  return "line[" + to_string(l.anchor) + "+t" + to_string(l.direction) + "]";
}

std::string to_string(const Plane3& pi) {
  return "plane[" + to_string(pi.normal) + ".u " + (sgn(pi.offset) < 0 ? "- " : "+ ") +
         to_string(Rational(abs(pi.offset))) + " = 0]";
}

}  // namespace jointlab
