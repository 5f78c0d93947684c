#pragma once

// Finite point/line configurations and their incidence counts.

#include "jointlab/geom.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace jointlab {

/// Points and lines exactly as read or generated (may contain repeats).
struct Instance {
  std::vector<Point3> points;
  std::vector<Line3> lines;
};

class IncidenceStructure {
 public:
  IncidenceStructure() = default;

  const std::vector<Point3>& points() const { return points_; }
  const std::vector<Line3>& lines() const { return lines_; }
  /// Sorted indices of the lines through point i.
  const std::vector<std::size_t>& lines_at(std::size_t i) const { return incidence_[i]; }
  std::size_t multiplicity(std::size_t point) const { return incidence_[point].size(); }
  std::size_t line_richness(std::size_t line) const { return richness_[line]; }
  std::size_t incidences() const { return total_; }

  friend IncidenceStructure build(std::span<const Point3> points, std::span<const Line3> lines);

 private:
  std::vector<Point3> points_;
  std::vector<Line3> lines_;
  std::vector<std::vector<std::size_t>> incidence_;
  std::vector<std::size_t> richness_;
  std::size_t total_ = 0;
};

/// Deduplicates and sorts both inputs, then records every incidence.
IncidenceStructure build(std::span<const Point3> points, std::span<const Line3> lines);
inline IncidenceStructure build(const Instance& inst) { return build(inst.points, inst.lines); }

/// Double loop over point_on_line, for cross-checking.
std::size_t count_incidences_brute(std::span<const Point3> points, std::span<const Line3> lines);

/// Points where three lines with linearly independent directions meet; sorted.
std::vector<Point3> joints(std::span<const Line3> lines);

/// Row k (k >= 1): points with multiplicity >= k and the incidences at them.
struct MultiplicityHistogram {
  std::vector<std::size_t> points_at_least;      // index k - 1
  std::vector<std::size_t> incidences_at_least;  // index k - 1

  std::size_t max_k() const { return points_at_least.size(); }
  std::size_t points_with_at_least(std::size_t k) const;
  std::size_t incidences_with_at_least(std::size_t k) const;
};

/// Rows run from k = 1 to one past the largest multiplicity (a single zero
/// row for an empty structure).
MultiplicityHistogram histogram(const IncidenceStructure& s);

struct RichestPlane {
  enum class Kind { Plane, Collinear, TooFew };
  Kind kind = Kind::TooFew;
  std::optional<Plane3> plane;  // set when kind == Plane
  std::size_t count = 0;
};

/// Largest number of points in one plane. Among maximal planes the smallest
/// in Plane3 order is returned. Fewer than 3 distinct points give TooFew and
/// all-collinear input gives Collinear, both with count = number of points.
/// Inputs above kRichestPlaneLimit distinct points raise PreconditionError.
inline constexpr std::size_t kRichestPlaneLimit = 512;
RichestPlane richest_plane(std::span<const Point3> points);

struct PlaneOfLines {
  std::optional<Plane3> plane;  // empty when there are no lines
  std::size_t count = 0;
};

/// Plane containing the most of the given lines (pair-spanned planes, or a
/// single line when no two are coplanar).
PlaneOfLines richest_plane_of_lines(std::span<const Line3> lines);

/// Fewest planes through a that together contain all the given lines.
/// Every line must pass through a (PreconditionError otherwise).
std::size_t plane_cover(const Point3& a, std::span<const Line3> lines);
/// Sum of plane_cover over the points of s.
std::size_t plane_cover_sum(const IncidenceStructure& s);

struct ConditionReport {
  RichestPlane richest;
  Rational plane_limit;  // b * |L|
  bool few_per_plane = false;
  std::size_t min_multiplicity = 0;
  std::optional<Point3> low_multiplicity_witness;
  bool three_per_point = false;
};

/// (i) no plane holds more than b |L| points; (ii) every point meets >= 3 lines.
ConditionReport check_conditions(const IncidenceStructure& s, const Rational& b);

}  // namespace jointlab
