#pragma once

// Small builders and random generators shared by the tests.

#include "jointlab/poly3.hpp"

#include <random>

namespace jointlab::testing {

inline Rational q(long num, long den = 1) { return make_rational(Integer(num), Integer(den)); }
inline Point3 pt(long x, long y, long z) { return {Rational(x), Rational(y), Rational(z)}; }

inline MultiPoly3 X() { return MultiPoly3::variable(kX); }
inline MultiPoly3 Y() { return MultiPoly3::variable(kY); }
inline MultiPoly3 Z() { return MultiPoly3::variable(kZ); }
inline MultiPoly3 C(long c) { return MultiPoly3(Rational(c)); }

inline Line3 line(long ax, long ay, long az, long dx, long dy, long dz) {
  return canonicalize_line(pt(ax, ay, az), pt(dx, dy, dz));
}

class Random {
 public:
  explicit Random(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }
  Rational rational(long span = 5, long max_den = 3) { return q(integer(-span, span), integer(1, max_den)); }
  Point3 point(long span = 5) { return pt(integer(-span, span), integer(-span, span), integer(-span, span)); }
  Point3 rational_point(long span = 5) { return {rational(span), rational(span), rational(span)}; }
  Vec3 nonzero_direction(long span = 3) {
    for (;;) {
      Point3 d = point(span);
      if (!d.is_zero()) return d;
    }
  }
  Line3 line(long span = 5) { return canonicalize_line(point(span), nonzero_direction()); }

  /// Sparse polynomial of total degree <= d with small integer coefficients.
  MultiPoly3 poly(int d, int terms, long span = 4) {
    MultiPoly3 p;
    for (int i = 0; i < terms; ++i) {
      const int a = static_cast<int>(integer(0, d));
      const int b = static_cast<int>(integer(0, d - a));
      const int c = static_cast<int>(integer(0, d - a - b));
      long coef = integer(-span, span);
      if (coef == 0) coef = 1;
      p.add_term({a, b, c}, Rational(coef));
    }
    return p;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace jointlab::testing
