#include "jointlab/errors.hpp"
#include "jointlab/poly3.hpp"

namespace jointlab {

std::vector<Monomial> monomials_up_to(int d) {
  std::vector<Monomial> out;
  for (int total = 0; total <= d; ++total) {
    // Ascending grlex within a degree: increasing x, then y.
    for (int i = 0; i <= total; ++i) {
      for (int j = 0; j <= total - i; ++j) out.push_back({i, j, total - i - j});
    }
  }
  return out;
}

MultiPoly3::MultiPoly3(const Rational& c) {
  if (sgn(c) != 0) terms_.emplace(Monomial{}, c);
}

MultiPoly3 MultiPoly3::variable(int var) {
  Monomial m;
  if (var == kX) m.x = 1;
  else if (var == kY) m.y = 1;
  else m.z = 1;
  return monomial(m, 1);
}

MultiPoly3 MultiPoly3::monomial(const Monomial& m, const Rational& c) {
  MultiPoly3 p;
  p.add_term(m, c);
  return p;
}

MultiPoly3 MultiPoly3::linear(const Rational& a, const Rational& b, const Rational& c,
                              const Rational& d) {
  MultiPoly3 p;
  p.add_term({1, 0, 0}, a);
  p.add_term({0, 1, 0}, b);
  p.add_term({0, 0, 1}, c);
  p.add_term({0, 0, 0}, d);
  return p;
}

bool MultiPoly3::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0);
}

int MultiPoly3::degree() const {
  return terms_.empty() ? kZeroDegree : terms_.rbegin()->first.degree();
}

int MultiPoly3::degree_in(int var) const {
  int d = kZeroDegree;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(var));
  return d;
}

Rational MultiPoly3::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

const Monomial& MultiPoly3::leading_monomial() const {
  if (terms_.empty()) throw PreconditionError("leading monomial of the zero polynomial");
  return terms_.rbegin()->first;
}

const Rational& MultiPoly3::leading_coefficient() const {
  if (terms_.empty()) throw PreconditionError("leading coefficient of the zero polynomial");
  return terms_.rbegin()->second;
}

MultiPoly3 MultiPoly3::homogeneous_part(int d) const {
  MultiPoly3 h;
  for (const auto& [m, c] : terms_) {
    if (m.degree() == d) h.terms_.emplace(m, c);
  }
  return h;
}

void MultiPoly3::add_term(const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Rational MultiPoly3::eval(const Point3& a) const {
  if (terms_.empty()) return 0;
  const int d = degree();
  std::vector<Rational> px(d + 1), py(d + 1), pz(d + 1);
  px[0] = py[0] = pz[0] = 1;
  for (int i = 1; i <= d; ++i) {
    px[i] = px[i - 1] * a.x;
    py[i] = py[i - 1] * a.y;
    pz[i] = pz[i - 1] * a.z;
  }
  Rational acc = 0;
  for (const auto& [m, c] : terms_) acc += c * px[m.x] * py[m.y] * pz[m.z];
  return acc;
}

MultiPoly3& MultiPoly3::operator+=(const MultiPoly3& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

MultiPoly3& MultiPoly3::operator-=(const MultiPoly3& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

MultiPoly3 operator-(const MultiPoly3& a) {
  MultiPoly3 r;
  for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
  return r;
}

MultiPoly3 operator*(const MultiPoly3& a, const MultiPoly3& b) {
  MultiPoly3 r;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma + mb, ca * cb);
  }
  return r;
}

MultiPoly3 operator*(const Rational& s, const MultiPoly3& a) {
  MultiPoly3 r;
  if (sgn(s) == 0) return r;
  for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, s * c);
  return r;
}

MultiPoly3 pow(const MultiPoly3& p, int e) {
  MultiPoly3 result(1);
  MultiPoly3 base = p;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

MultiPoly3 derivative(const MultiPoly3& p, int var) {
  MultiPoly3 d;
  for (const auto& [m, c] : p.terms()) {
    const int e = m.exponent(var);
    if (e == 0) continue;
    Monomial dm = m;
    if (var == kX) dm.x -= 1;
    else if (var == kY) dm.y -= 1;
    else dm.z -= 1;
    d.add_term(dm, c * e);
  }
  return d;
}

Gradient gradient(const MultiPoly3& p) {
  return {derivative(p, kX), derivative(p, kY), derivative(p, kZ)};
}

Hessian hessian(const MultiPoly3& p) {
  const Gradient g = gradient(p);
  Hessian h;
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      h[i][j] = derivative(g[i], j);
      if (j != i) h[j][i] = h[i][j];
    }
  }
  return h;
}

Vec3 eval_gradient(const Gradient& g, const Point3& a) {
  return {g[0].eval(a), g[1].eval(a), g[2].eval(a)};
}

Mat eval_hessian(const Hessian& h, const Point3& a) {
  Mat m(3, 3);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i; j < 3; ++j) {
      m(i, j) = h[i][j].eval(a);
      m(j, i) = m(i, j);
    }
  }
  return m;
}

MultiPoly3 substitute(const MultiPoly3& p, const std::array<MultiPoly3, 3>& s) {
  if (p.is_zero()) return {};
  const int d = p.degree();
  std::array<std::vector<MultiPoly3>, 3> powers;
  for (int v = 0; v < 3; ++v) {
    powers[v].reserve(d + 1);
    powers[v].emplace_back(1);
    for (int i = 1; i <= d; ++i) powers[v].push_back(powers[v].back() * s[v]);
  }
  MultiPoly3 out;
  for (const auto& [m, c] : p.terms()) {
    out += c * (powers[0][m.x] * powers[1][m.y] * powers[2][m.z]);
  }
  return out;
}

namespace {

UniPoly substitute_univariate(const MultiPoly3& p, const std::array<UniPoly, 3>& s) {
  if (p.is_zero()) return {};
  const int d = p.degree();
  std::array<std::vector<UniPoly>, 3> powers;
  for (int v = 0; v < 3; ++v) {
    powers[v].push_back(UniPoly::constant(1));
    for (int i = 1; i <= d; ++i) powers[v].push_back(powers[v].back() * s[v]);
  }
  UniPoly out;
  for (const auto& [m, c] : p.terms()) {
    out = out + c * (powers[0][m.x] * powers[1][m.y] * powers[2][m.z]);
  }
  return out;
}

}  // namespace

UniPoly restrict_to_line(const MultiPoly3& p, const Line3& l) {
  const Vec3 d = l.direction.to_vec();
  return substitute_univariate(p, {UniPoly::linear(l.anchor.x, d.x), UniPoly::linear(l.anchor.y, d.y),
                                   UniPoly::linear(l.anchor.z, d.z)});
}

bool vanishes_on_line(const MultiPoly3& p, const Line3& l) { return restrict_to_line(p, l).is_zero(); }

UniPoly specialize(const MultiPoly3& p, int var, const std::array<Rational, 3>& values) {
  std::array<UniPoly, 3> s;
  for (int v = 0; v < 3; ++v) {
    s[v] = v == var ? UniPoly::linear(0, 1) : UniPoly::constant(values[v]);
  }
  return substitute_univariate(p, s);
}

std::vector<MultiPoly3> coefficients_in(const MultiPoly3& p, int var) {
  const int d = p.degree_in(var);
  if (d == kZeroDegree) return {};
  std::vector<MultiPoly3> out(static_cast<std::size_t>(d + 1));
  for (const auto& [m, c] : p.terms()) {
    Monomial rest = m;
    if (var == kX) rest.x = 0;
    else if (var == kY) rest.y = 0;
    else rest.z = 0;
    out[static_cast<std::size_t>(m.exponent(var))].add_term(rest, c);
  }
  return out;
}

MultiPoly3 from_coefficients(const std::vector<MultiPoly3>& coeffs, int var) {
  MultiPoly3 out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    Monomial shift;
    if (var == kX) shift.x = static_cast<int>(i);
    else if (var == kY) shift.y = static_cast<int>(i);
    else shift.z = static_cast<int>(i);
    for (const auto& [m, c] : coeffs[i].terms()) out.add_term(m + shift, c);
  }
  return out;
}

MultiPoly3 normalized(const MultiPoly3& p) {
  if (p.is_zero()) return p;
  std::vector<Rational> cs;
  cs.reserve(p.term_count());
  for (const auto& [m, c] : p.terms()) cs.push_back(c);
  const Integer l = lcm_of_denominators(cs);
  Integer g = 0;
  for (const auto& c : cs) {
    Integer v = c.get_num() * (l / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  }
  Rational scale(l, g);
  scale.canonicalize();
  if (sgn(p.leading_coefficient()) < 0) scale = -scale;
  return scale * p;
}

std::optional<MultiPoly3> divide_exact(const MultiPoly3& a, const MultiPoly3& b) {
  if (b.is_zero()) throw DegenerateInputError("division by the zero polynomial");
  const Monomial& lb = b.leading_monomial();
  const Rational& cb = b.leading_coefficient();
  MultiPoly3 r = a;
  MultiPoly3 q;
  while (!r.is_zero()) {
    const Monomial lr = r.leading_monomial();
    if (!lb.divides(lr)) return std::nullopt;
    const MultiPoly3 t = MultiPoly3::monomial(lr - lb, r.leading_coefficient() / cb);
    q += t;
    r -= t * b;
  }
  return q;
}

MultiPoly3 plane_poly(const Plane3& pi) {
  return MultiPoly3::linear(Rational(pi.normal.x), Rational(pi.normal.y), Rational(pi.normal.z),
                            pi.offset);
}

Plane3 plane_of_linear(const MultiPoly3& l) {
  if (l.degree() != 1) throw PreconditionError("plane_of_linear expects a degree-1 polynomial");
  const Vec3 n(l.coefficient({1, 0, 0}), l.coefficient({0, 1, 0}), l.coefficient({0, 0, 1}));
  IVec3 in = primitive_direction(n);
  // Scale factor mapping n onto the primitive normal.
  const std::size_t i = in.first_nonzero();
  const Rational s = Rational(in[i]) / n[i];
  return {std::move(in), s * l.coefficient({0, 0, 0})};
}

Quadric taylor2(const MultiPoly3& p, const Point3& a) {
  const Gradient g = gradient(p);
  const Hessian h = hessian(p);
  const Vec3 ga = eval_gradient(g, a);
  const Mat ha = eval_hessian(h, a);
  std::array<MultiPoly3, 3> du;
  for (int v = 0; v < 3; ++v) du[v] = MultiPoly3::variable(v) - MultiPoly3(a[v]);
  MultiPoly3 q(p.eval(a));
  for (int i = 0; i < 3; ++i) q += ga[i] * du[i];
  const Rational half(1, 2);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const Rational& hij = ha(i, j);
      if (sgn(hij) != 0) q += (half * hij) * (du[i] * du[j]);
    }
  }
  return {q};
}

std::string to_string(const MultiPoly3& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    if (!out.empty()) out += sgn(c) < 0 ? " - " : " + ";
    else if (sgn(c) < 0) out += "-";
    const Rational ac = abs(c);
    std::string mono;
    auto append = [&mono](const char* v, int e) {
      if (e == 0) return;
      if (!mono.empty()) mono += "*";
      mono += v;
      if (e > 1) mono += "^" + std::to_string(e);
    };
    append("x", m.x);
    append("y", m.y);
    append("z", m.z);
    if (mono.empty()) out += to_string(ac);
    else if (ac == 1) out += mono;
    else out += to_string(ac) + "*" + mono;
  }
  return out;
}

}  // namespace jointlab
