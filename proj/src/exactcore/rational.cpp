#include "jointlab/errors.hpp"
#include "jointlab/exact.hpp"

#include <cctype>

namespace jointlab {

Rational make_rational(const Integer& num, const Integer& den) {
  if (sgn(den) == 0) throw DegenerateInputError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

std::optional<Integer> parse_integer(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') i = 1;
  if (i == text.size()) return std::nullopt;
  for (std::size_t k = i; k < text.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(text[k]))) return std::nullopt;
  }
  std::string digits(text.substr(text[0] == '+' ? 1 : 0));
  return Integer(digits, 10);
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    auto z = parse_integer(text);
    if (!z) return std::nullopt;
    return Rational(*z);
  }
  auto num = parse_integer(text.substr(0, slash));
  auto den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+')) return std::nullopt;
  auto den = parse_integer(den_text);
  if (!num || !den || sgn(*den) == 0) return std::nullopt;
  return make_rational(*num, *den);
}

Integer lcm_of_denominators(const std::vector<Rational>& values) {
  Integer l = 1;
  for (const auto& v : values) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  }
  return l;
}

Integer gcd_of_numerators(const std::vector<Rational>& values) {
  Integer g = 0;
  for (const auto& v : values) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
  }
  return g;
}

std::vector<Integer> primitive_integers(const std::vector<Rational>& values) {
  const Integer l = lcm_of_denominators(values);
  std::vector<Integer> out;
  out.reserve(values.size());
  Integer g = 0;
  for (const auto& v : values) {
    Integer scaled = v.get_num() * (l / v.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), scaled.get_mpz_t());
    out.push_back(std::move(scaled));
  }
  if (g == 0) return out;
  int sign = 0;
  for (const auto& z : out) {
    if (sgn(z) != 0) {
      sign = sgn(z);
      break;
    }
  }
  if (sign < 0) g = -g;
  for (auto& z : out) mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), g.get_mpz_t());
  return out;
}

Integer ceil_cbrt(const Rational& x) {
  if (sgn(x) <= 0) return 0;
  // floor(cbrt(ceil(x))) then adjust upward.
  Integer c = x.get_num() / x.get_den();
  if (c * x.get_den() != x.get_num()) c += 1;
  Integer r;
  mpz_root(r.get_mpz_t(), c.get_mpz_t(), 3);
  while (Rational(r * r * r) < x) r += 1;
  while (r > 0 && Rational((r - 1) * (r - 1) * (r - 1)) >= x) r -= 1;
  return r;
}

Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
Vec3 operator*(const Rational& s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }

Rational dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

std::string to_string(const Vec3& v) {
  return "(" + to_string(v.x) + "," + to_string(v.y) + "," + to_string(v.z) + ")";
}

}  // namespace jointlab
