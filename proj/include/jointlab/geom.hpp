#pragma once

// Exact points, lines and planes in 3-space.

#include "jointlab/exact.hpp"

#include <optional>
#include <string>

namespace jointlab {

using Point3 = Vec3;

/// Integer 3-vector used for line directions and plane normals.
struct IVec3 {
  Integer x, y, z;

  const Integer& operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }
  bool is_zero() const { return sgn(x) == 0 && sgn(y) == 0 && sgn(z) == 0; }
  Vec3 to_vec() const { return {Rational(x), Rational(y), Rational(z)}; }
  /// Index of the first nonzero component; 3 for the zero vector.
  std::size_t first_nonzero() const;

  friend bool operator==(const IVec3& a, const IVec3& b) {
    return a.x == b.x && a.y == b.y && a.z == b.z;
  }
  friend bool operator!=(const IVec3& a, const IVec3& b) { return !(a == b); }
  friend bool operator<(const IVec3& a, const IVec3& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.z < b.z;
  }
};

/// Primitive integer multiple of v with a positive first nonzero component.
/// Throws DegenerateInputError for the zero vector.
IVec3 primitive_direction(const Vec3& v);
std::string to_string(const IVec3& v);

/// A line in canonical form: primitive direction with positive first nonzero
/// component, anchored at the unique point whose coordinate at that index is 0.
/// Two descriptions of the same line canonicalize to equal values.
struct Line3 {
  Point3 anchor;
  IVec3 direction;

  Point3 at(const Rational& t) const { return anchor + t * direction.to_vec(); }

  friend bool operator==(const Line3& a, const Line3& b) {
    return a.direction == b.direction && a.anchor == b.anchor;
  }
  friend bool operator!=(const Line3& a, const Line3& b) { return !(a == b); }
  /// Direction first, then anchor.
  friend bool operator<(const Line3& a, const Line3& b) {
    if (a.direction != b.direction) return a.direction < b.direction;
    return a.anchor < b.anchor;
  }
};

/// Locus normal . u + offset = 0 with a primitive normal whose first nonzero
/// component is positive.
struct Plane3 {
  IVec3 normal;
  Rational offset;

  friend bool operator==(const Plane3& a, const Plane3& b) {
    return a.normal == b.normal && a.offset == b.offset;
  }
  friend bool operator!=(const Plane3& a, const Plane3& b) { return !(a == b); }
  friend bool operator<(const Plane3& a, const Plane3& b) {
    if (a.normal != b.normal) return a.normal < b.normal;
    return a.offset < b.offset;
  }
};

Line3 canonicalize_line(const Point3& point, const Vec3& dir);
/// Line through two distinct points.
Line3 line_through(const Point3& a, const Point3& b);
/// Plane from a (not necessarily primitive) normal and a point on it.
Plane3 plane_from_normal(const Vec3& normal, const Point3& on_plane);

bool point_on_line(const Point3& a, const Line3& l);
bool lines_parallel(const Line3& l1, const Line3& l2);
/// True iff the lines intersect or are parallel (4x4 determinant test).
bool lines_coplanar(const Line3& l1, const Line3& l2);

struct LineMeet {
  enum class Kind { None, Point, SameLine };
  Kind kind = Kind::None;
  Point3 point;  // valid when kind == Point
};

LineMeet line_intersection(const Line3& l1, const Line3& l2);

std::optional<Plane3> plane_through(const Point3& a, const Point3& b, const Point3& c);
/// The plane spanned by two distinct coplanar lines; empty otherwise.
std::optional<Plane3> plane_of_lines(const Line3& l1, const Line3& l2);
bool point_in_plane(const Point3& a, const Plane3& pi);
bool line_in_plane(const Line3& l, const Plane3& pi);
/// normal . u + offset.
Rational plane_value(const Plane3& pi, const Point3& u);

bool directions_independent(const IVec3& a, const IVec3& b, const IVec3& c);

std::string to_string(const Line3& l);
std::string to_string(const Plane3& pi);

}  // namespace jointlab
