#include "jointlab/unipoly.hpp"

#include "jointlab/errors.hpp"

#include <algorithm>

namespace jointlab {

UniPoly::UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::constant(const Rational& c) { return UniPoly({c}); }

UniPoly UniPoly::linear(const Rational& a, const Rational& b) { return UniPoly({a, b}); }

void UniPoly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Rational UniPoly::eval(const Rational& t) const {
  Rational acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * t + c_[i];
  return acc;
}

UniPoly UniPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return UniPoly(std::move(d));
}

UniPoly UniPoly::monic() const {
  if (c_.empty()) return {};
  const Rational lc = c_.back();
  std::vector<Rational> m(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) m[i] = c_[i] / lc;
  return UniPoly(std::move(m));
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coefficient(i) + b.coefficient(i);
  return UniPoly(std::move(c));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coefficient(i) - b.coefficient(i);
  return UniPoly(std::move(c));
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (sgn(a.c_[i]) == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return UniPoly(std::move(c));
}

UniPoly operator*(const Rational& s, const UniPoly& a) {
  std::vector<Rational> c(a.c_);
  for (auto& v : c) v *= s;
  return UniPoly(std::move(c));
}

UniDivision divide(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw DegenerateInputError("division by the zero polynomial");
  std::vector<Rational> r = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {{}, a};
  std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db + 1));
  const Rational lb = b.leading();
  for (int k = a.degree() - db; k >= 0; --k) {
    const Rational coef = r[static_cast<std::size_t>(k + db)] / lb;
    q[static_cast<std::size_t>(k)] = coef;
    if (sgn(coef) == 0) continue;
    for (int j = 0; j <= db; ++j) {
      r[static_cast<std::size_t>(k + j)] -= coef * b.coeffs()[static_cast<std::size_t>(j)];
    }
  }
  return {UniPoly(std::move(q)), UniPoly(std::move(r))};
}

UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = divide(a, b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

UniPoly squarefree_part(const UniPoly& f) {
  if (f.degree() <= 0) return f.is_zero() ? f : UniPoly::constant(1);
  const UniPoly g = gcd(f, f.derivative());
  return divide(f, g).quotient.monic();
}

namespace {

// Integer coefficients with content 1 (sign untouched).
std::vector<Integer> integer_coefficients(const UniPoly& f) {
  const Integer l = lcm_of_denominators(f.coeffs());
  std::vector<Integer> out;
  Integer g = 0;
  for (const auto& c : f.coeffs()) {
    Integer v = c.get_num() * (l / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    out.push_back(std::move(v));
  }
  for (auto& v : out) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  return out;
}

Integer eval_mod(const std::vector<Integer>& a, const Integer& x, const Integer& m) {
  Integer acc = 0;
  for (std::size_t i = a.size(); i-- > 0;) {
    acc = acc * x + a[i];
    mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), m.get_mpz_t());
  }
  return acc;
}

std::vector<Integer> derivative_coeffs(const std::vector<Integer>& a) {
  std::vector<Integer> d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * static_cast<unsigned long>(i));
  return d;
}

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Recovers u/v with |u| <= num_bound, 0 < v <= den_bound and u = v r (mod m),
// provided m > 2 num_bound den_bound.
std::optional<Rational> rational_reconstruction(const Integer& r, const Integer& m,
                                                const Integer& num_bound,
                                                const Integer& den_bound) {
  Integer r0 = m, r1 = r;
  Integer t0 = 0, t1 = 1;
  while (abs(r1) > num_bound) {
    Integer q = r0 / r1;
    Integer r2 = r0 - q * r1;
    Integer t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (sgn(t1) == 0 || abs(t1) > den_bound) return std::nullopt;
  return make_rational(r1, t1);
}

}  // namespace

std::vector<Rational> rational_roots(const UniPoly& f) {
  if (f.degree() <= 0) return {};
  std::vector<Rational> roots;
  std::vector<Integer> a = integer_coefficients(squarefree_part(f));
  if (sgn(a.front()) == 0) {
    roots.emplace_back(0);
    a.erase(a.begin());  // square-free: t divides at most once
  }
  const std::size_t deg = a.size() - 1;
  if (deg == 1) {
    roots.push_back(make_rational(-a[0], a[1]));
  } else if (deg > 1) {
    const Integer num_bound = abs(a.front());
    const Integer den_bound = abs(a.back());
    const Integer needed = 2 * num_bound * den_bound + 1;
    const std::vector<Integer> da = derivative_coeffs(a);

    // A prime not dividing the leading coefficient for which every root mod p
    // is simple: each rational root then lifts uniquely from its residue.
    for (unsigned long p = 3;; p += 2) {
      if (!is_prime(p)) continue;
      const Integer P(p);
      if (sgn(Integer(a.back() % P)) == 0) continue;
      std::vector<Integer> residues;
      bool simple = true;
      for (unsigned long r = 0; r < p && simple; ++r) {
        const Integer R(r);
        if (sgn(eval_mod(a, R, P)) != 0) continue;
        if (sgn(eval_mod(da, R, P)) == 0) simple = false;
        residues.push_back(R);
      }
      if (!simple) continue;
      for (const Integer& r0 : residues) {
        Integer r = r0, mod = P;
        while (mod < needed) {
          mod *= mod;
          Integer fr = eval_mod(a, r, mod);
          Integer dfr = eval_mod(da, r, mod);
          Integer inv;
          mpz_invert(inv.get_mpz_t(), dfr.get_mpz_t(), mod.get_mpz_t());
          r = r - fr * inv;
          mpz_mod(r.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t());
        }
        auto cand = rational_reconstruction(r, mod, num_bound, den_bound);
        if (cand && sgn(f.eval(*cand)) == 0) roots.push_back(*cand);
      }
      break;
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

std::string to_string(const UniPoly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (std::size_t i = f.coeffs().size(); i-- > 0;) {
    const Rational& c = f.coeffs()[i];
    if (sgn(c) == 0) continue;
    if (!out.empty()) out += sgn(c) < 0 ? " - " : " + ";
    else if (sgn(c) < 0) out += "-";
    const Rational ac = abs(c);
    if (i == 0 || ac != 1) out += to_string(ac);
    if (i > 0) {
      if (ac != 1) out += "*";
      out += "t";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

}  // namespace jointlab
