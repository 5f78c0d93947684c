#pragma once

// Vanishing polynomials and the critical/flat classification of points and
// lines on their zero sets.

#include "jointlab/geom.hpp"
#include "jointlab/incidence.hpp"
#include "jointlab/poly3.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace jointlab {

/// Smallest d with C(d + 3, 3) > m.
int vanishing_degree_bound(std::size_t m);

/// Square-free, normalized polynomial of least degree vanishing on `points`
/// (constant 1 for an empty set). The degree is searched upward from 0 and
/// the first canonical nullspace vector is taken.
MultiPoly3 fit_vanishing_poly(std::span<const Point3> points);

/// Dimension of the space of polynomials of degree <= d vanishing on `points`.
std::size_t vanishing_space_dimension(std::span<const Point3> points, int d);

/// The three flatness polynomials (grad p x e_j)^T H (grad p x e_j).
/// Constant p -> PreconditionError.
std::array<MultiPoly3, 3> flatness_polys(const MultiPoly3& p);

enum class PointKind { OffSurface, Critical, Flat, RegularNonFlat };
enum class LineKind { Crossing, CriticalLine, FlatLine, OrdinaryOnSurface };

std::string to_string(PointKind k);
std::string to_string(LineKind k);

struct PointClass {
  PointKind kind = PointKind::OffSurface;
  Rational value;
  Vec3 gradient;
  /// Tangent basis and the entries b1'Hb1, b1'Hb2, b2'Hb2 (regular points only).
  std::optional<std::array<IVec3, 2>> tangent_basis;
  std::array<Rational, 3> tangent_hessian{};
  std::array<Rational, 3> flatness_values{};
  /// Some gradient component is zero, so the flatness polynomials may vanish
  /// at a non-flat point.
  bool frame_degenerate = false;
};

/// A polynomial with its derivatives precomputed for repeated classification.
class Surface {
 public:
  explicit Surface(MultiPoly3 p);

  const MultiPoly3& poly() const { return p_; }
  int degree() const { return p_.degree(); }
  const Gradient& gradient() const { return grad_; }
  const Hessian& hessian() const { return hess_; }
  /// All zero for constant p.
  const std::array<MultiPoly3, 3>& flatness() const { return flat_; }

  PointClass classify_point(const Point3& a) const;
  LineKind classify_line(const Line3& l) const;

  bool contains_line(const Line3& l) const { return vanishes_on_line(p_, l); }
  bool is_critical_line(const Line3& l) const;

 private:
  MultiPoly3 p_;
  Gradient grad_;
  Hessian hess_;
  std::array<MultiPoly3, 3> flat_;
};

PointClass classify_point(const MultiPoly3& p, const Point3& a);
LineKind classify_line(const MultiPoly3& p, const Line3& l);

/// Primitive tangent basis at a point with nonzero gradient g: the first
/// nonzero g x e_j for j = 3, 2, 1, then the next one not parallel to it.
std::array<IVec3, 2> tangent_basis(const Vec3& g);

struct LineCensus {
  std::size_t crossing = 0;
  std::size_t critical = 0;
  std::size_t flat = 0;
  std::size_t ordinary = 0;
  int degree = 0;
  long critical_bound = 0;  // d (d - 1)
  long flat_bound = 0;      // 3 d^2 - 4 d
  bool has_linear_factors = false;
  bool flat_bound_applies = false;  // no linear factors
  bool flat_within_bound = true;
};

/// Classifies every line and checks the critical bound (always) and the flat
/// bound (when p has no linear factor); a violated applicable bound raises
/// InvariantError. Non-square-free p -> PreconditionError.
LineCensus count_classified_lines(const MultiPoly3& p, std::span<const Line3> lines);

struct CoplanarityReport {
  bool preconditions_met = false;
  std::string violation;
  bool coplanar = false;
};

/// Lines on Z(p) through a regular point all lie in its tangent plane.
CoplanarityReport coplanarity_at_regular(const MultiPoly3& p, const Point3& a,
                                         std::span<const Line3> lines);

struct SurfaceLineCensus {
  std::vector<Point3> points;  // meets of >= 3 contained lines
  std::size_t incidences = 0;
  std::size_t lines_on_surface = 0;
  std::size_t lines_off_surface = 0;
  LineCensus lines;
  long nd = 0;
  long d_cubed = 0;
};

/// Points where >= 3 of the given lines lying on Z(p) meet, with incidence
/// counts and the line classification. p must be square-free without linear
/// factors (PreconditionError otherwise).
SurfaceLineCensus surface_line_census(const MultiPoly3& p, std::span<const Line3> lines);

}  // namespace jointlab
