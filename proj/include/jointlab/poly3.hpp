#pragma once

// Sparse exact polynomials in x, y, z.

#include "jointlab/exact.hpp"
#include "jointlab/geom.hpp"
#include "jointlab/unipoly.hpp"

#include <array>
#include <climits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace jointlab {

enum Var : int { kX = 0, kY = 1, kZ = 2 };

struct Monomial {
  int x = 0, y = 0, z = 0;

  int degree() const { return x + y + z; }
  int exponent(int var) const { return var == kX ? x : (var == kY ? y : z); }
  bool divides(const Monomial& m) const { return x <= m.x && y <= m.y && z <= m.z; }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend Monomial operator+(const Monomial& a, const Monomial& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend Monomial operator-(const Monomial& a, const Monomial& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
};

/// Graded lexicographic order with x > y > z (ascending).
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.z < b.z;
  }
};

/// All monomials of total degree <= d in ascending grlex order.
std::vector<Monomial> monomials_up_to(int d);

/// Degree of the zero polynomial; compares below every real degree.
inline constexpr int kZeroDegree = INT_MIN;

class MultiPoly3 {
 public:
  using Terms = std::map<Monomial, Rational, GrlexLess>;

  MultiPoly3() = default;
  explicit MultiPoly3(const Rational& c);
  static MultiPoly3 variable(int var);
  static MultiPoly3 monomial(const Monomial& m, const Rational& c);
  static MultiPoly3 linear(const Rational& a, const Rational& b, const Rational& c,
                           const Rational& d);

  const Terms& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  int degree() const;
  /// kZeroDegree for the zero polynomial.
  int degree_in(int var) const;
  Rational coefficient(const Monomial& m) const;
  /// Largest monomial in grlex order; zero polynomial -> precondition error.
  const Monomial& leading_monomial() const;
  const Rational& leading_coefficient() const;
  /// Sum of the terms of total degree exactly d.
  MultiPoly3 homogeneous_part(int d) const;

  void add_term(const Monomial& m, const Rational& c);

  Rational eval(const Point3& a) const;

  MultiPoly3& operator+=(const MultiPoly3& o);
  MultiPoly3& operator-=(const MultiPoly3& o);
  friend MultiPoly3 operator+(MultiPoly3 a, const MultiPoly3& b) { return a += b; }
  friend MultiPoly3 operator-(MultiPoly3 a, const MultiPoly3& b) { return a -= b; }
  friend MultiPoly3 operator-(const MultiPoly3& a);
  friend MultiPoly3 operator*(const MultiPoly3& a, const MultiPoly3& b);
  friend MultiPoly3 operator*(const Rational& s, const MultiPoly3& a);
  friend bool operator==(const MultiPoly3& a, const MultiPoly3& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

MultiPoly3 pow(const MultiPoly3& p, int e);
MultiPoly3 derivative(const MultiPoly3& p, int var);

using Gradient = std::array<MultiPoly3, 3>;
using Hessian = std::array<std::array<MultiPoly3, 3>, 3>;

Gradient gradient(const MultiPoly3& p);
Hessian hessian(const MultiPoly3& p);
Vec3 eval_gradient(const Gradient& g, const Point3& a);
Mat eval_hessian(const Hessian& h, const Point3& a);

/// p(s[0], s[1], s[2]).
MultiPoly3 substitute(const MultiPoly3& p, const std::array<MultiPoly3, 3>& s);
/// p restricted to anchor + t * direction.
UniPoly restrict_to_line(const MultiPoly3& p, const Line3& l);
bool vanishes_on_line(const MultiPoly3& p, const Line3& l);
/// p with the other two variables fixed to `values` (index `var` ignored).
UniPoly specialize(const MultiPoly3& p, int var, const std::array<Rational, 3>& values);

/// Coefficients of p as a polynomial in `var`; entry i multiplies var^i.
std::vector<MultiPoly3> coefficients_in(const MultiPoly3& p, int var);
MultiPoly3 from_coefficients(const std::vector<MultiPoly3>& coeffs, int var);

/// Integer coefficients with content 1 and positive leading coefficient.
/// Nonzero constants normalize to 1; zero stays zero.
MultiPoly3 normalized(const MultiPoly3& p);

/// Quotient when b divides a exactly, empty otherwise.
std::optional<MultiPoly3> divide_exact(const MultiPoly3& a, const MultiPoly3& b);
/// Normalized greatest common divisor (primitive PRS, recursive in x, y, z).
MultiPoly3 gcd(const MultiPoly3& a, const MultiPoly3& b);

/// Product of the distinct irreducible factors of p, normalized.
/// Zero input -> DegenerateInputError.
MultiPoly3 squarefree_part(const MultiPoly3& p);
bool is_squarefree(const MultiPoly3& p);

/// normal . u + offset as a polynomial.
MultiPoly3 plane_poly(const Plane3& pi);
/// Plane of a degree-1 polynomial.
Plane3 plane_of_linear(const MultiPoly3& l);

struct LinearFactorization {
  std::vector<Plane3> planes;  // sorted
  MultiPoly3 residual;         // p / product of plane_poly(planes)
};

/// Extracts every linear factor. Candidate normals come from the linear
/// factors of the leading form (complete for square-free p); `extra`
/// candidate planes are tried first. Pre: p nonzero and square-free.
LinearFactorization linear_factors(const MultiPoly3& p, std::span<const Plane3> extra = {});
/// Linear factors a x + b y + c z of a homogeneous polynomial, as primitive
/// normals (deduplicated, sorted).
std::vector<IVec3> homogeneous_linear_factors(const MultiPoly3& h);

/// Sylvester resultant eliminating `var`; p's coefficients fill the top rows.
/// Pre: both inputs have positive degree in `var`.
MultiPoly3 resultant(const MultiPoly3& p, const MultiPoly3& q, int var);
inline MultiPoly3 resultant_x(const MultiPoly3& p, const MultiPoly3& q) { return resultant(p, q, kX); }
inline MultiPoly3 resultant_y(const MultiPoly3& p, const MultiPoly3& q) { return resultant(p, q, kY); }
inline MultiPoly3 resultant_z(const MultiPoly3& p, const MultiPoly3& q) { return resultant(p, q, kZ); }

/// Determinant of a square matrix of polynomials (fraction-free elimination).
MultiPoly3 poly_determinant(std::vector<std::vector<MultiPoly3>> m);

/// Polynomial of degree <= 2.
struct Quadric {
  MultiPoly3 poly;
};

/// Second-order Taylor form of p at a.
Quadric taylor2(const MultiPoly3& p, const Point3& a);

/// Human-readable form, terms in descending grlex order, e.g. "-x*y + z".
std::string to_string(const MultiPoly3& p);

}  // namespace jointlab
