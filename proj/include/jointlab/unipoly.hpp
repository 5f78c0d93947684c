#pragma once

#include "jointlab/exact.hpp"

#include <string>
#include <vector>

namespace jointlab {

/// Dense univariate polynomial over the rationals; coeffs()[i] multiplies t^i.
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs);
  static UniPoly constant(const Rational& c);
  /// a + b t
  static UniPoly linear(const Rational& a, const Rational& b);

  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }
  Rational coefficient(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

  Rational eval(const Rational& t) const;
  UniPoly derivative() const;
  UniPoly monic() const;

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const Rational& s, const UniPoly& a);
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

 private:
  void trim();
  std::vector<Rational> c_;
};

struct UniDivision {
  UniPoly quotient;
  UniPoly remainder;
};

UniDivision divide(const UniPoly& a, const UniPoly& b);
/// Monic gcd; gcd(0, 0) = 0.
UniPoly gcd(UniPoly a, UniPoly b);
UniPoly squarefree_part(const UniPoly& f);

/// Distinct rational roots in increasing order. The zero polynomial has no
/// well-defined root set and yields an empty list.
std::vector<Rational> rational_roots(const UniPoly& f);

std::string to_string(const UniPoly& f);

}  // namespace jointlab
