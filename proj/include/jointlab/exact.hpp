#pragma once

// Exact scalars, 3-vectors and dense rational matrices.

#include <gmpxx.h>

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace jointlab {

using Integer = mpz_class;
/// gmpxx keeps mpq_class canonical after every arithmetic operation:
/// reduced, positive denominator, zero as 0/1.
using Rational = mpq_class;

/// Builds num/den in canonical form. Throws DegenerateInputError when den == 0.
Rational make_rational(const Integer& num, const Integer& den);

/// "n" for integers, "n/d" otherwise.
std::string to_string(const Rational& q);
/// Always "n/d" (used by trace records).
std::string to_fraction_string(const Rational& q);
std::string to_string(const Integer& z);

/// Parses an integer or num/den literal; empty optional on malformed input
/// (including a zero denominator).
std::optional<Rational> parse_rational(std::string_view text);

Integer lcm_of_denominators(const std::vector<Rational>& values);
Integer gcd_of_numerators(const std::vector<Rational>& values);

/// Scales `values` to coprime integers whose first nonzero entry is positive.
/// All-zero input is returned unchanged.
std::vector<Integer> primitive_integers(const std::vector<Rational>& values);

/// Smallest r >= 0 with r^3 >= x (x >= 0).
Integer ceil_cbrt(const Rational& x);

struct Vec3 {
  Rational x, y, z;

  Vec3() = default;
  Vec3(Rational x_, Rational y_, Rational z_)
      : x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {}

  const Rational& operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }
  Rational& operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }

  bool is_zero() const { return sgn(x) == 0 && sgn(y) == 0 && sgn(z) == 0; }

  friend bool operator==(const Vec3& a, const Vec3& b) {
    return a.x == b.x && a.y == b.y && a.z == b.z;
  }
  friend bool operator!=(const Vec3& a, const Vec3& b) { return !(a == b); }
  /// Lexicographic on (x, y, z).
  friend bool operator<(const Vec3& a, const Vec3& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.z < b.z;
  }
};

Vec3 operator+(const Vec3& a, const Vec3& b);
Vec3 operator-(const Vec3& a, const Vec3& b);
Vec3 operator-(const Vec3& a);
Vec3 operator*(const Rational& s, const Vec3& v);
Rational dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
std::string to_string(const Vec3& v);

/// Dense row-major rational matrix.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols);
  Mat(std::size_t rows, std::size_t cols, std::vector<Rational> entries);
  static Mat identity(std::size_t n);
  static Mat from_rows(const std::vector<std::vector<Rational>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::vector<Rational> apply(const std::vector<Rational>& v) const;

  friend bool operator==(const Mat&, const Mat&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Basis of the right nullspace. Each vector is primitive integral with a
/// positive first nonzero entry; one vector per free column, in column order.
/// Since the reduced echelon form is unique, so is this basis.
std::vector<std::vector<Rational>> nullspace(const Mat& m);
std::size_t rank(const Mat& m);
Rational determinant(const Mat& m);
Rational det3(const Mat& m);
Rational det4(const Mat& m);

}  // namespace jointlab
