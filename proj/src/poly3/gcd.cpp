#include "jointlab/errors.hpp"
#include "jointlab/poly3.hpp"

namespace jointlab {

namespace {

int main_variable(const MultiPoly3& a, const MultiPoly3& b) {
  for (int v = kX; v <= kZ; ++v) {
    if (a.degree_in(v) > 0 || b.degree_in(v) > 0) return v;
  }
  return -1;
}

MultiPoly3 gcd_rec(const MultiPoly3& a, const MultiPoly3& b);

MultiPoly3 content_in(const MultiPoly3& p, int var) {
  MultiPoly3 g;
  for (const auto& c : coefficients_in(p, var)) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? normalized(c) : gcd_rec(g, c);
    if (g.is_constant()) return MultiPoly3(1);
  }
  return g;
}

MultiPoly3 primitive_part_in(const MultiPoly3& p, int var) {
  const MultiPoly3 c = content_in(p, var);
  if (c.is_constant()) return normalized(p);
  auto q = divide_exact(p, c);
  if (!q) throw InvariantError("content does not divide its polynomial");
  return normalized(*q);
}

// lc(B)^k A reduced modulo B as polynomials in `var`.
MultiPoly3 pseudo_remainder(const MultiPoly3& a, const MultiPoly3& b, int var) {
  std::vector<MultiPoly3> r = coefficients_in(a, var);
  const std::vector<MultiPoly3> bc = coefficients_in(b, var);
  const std::size_t db = bc.size() - 1;
  const MultiPoly3& lb = bc.back();
  while (r.size() > db && !r.empty()) {
    const MultiPoly3 lr = r.back();
    const std::size_t shift = r.size() - 1 - db;
    for (auto& c : r) c = lb * c;
    for (std::size_t j = 0; j <= db; ++j) r[shift + j] -= lr * bc[j];
    while (!r.empty() && r.back().is_zero()) r.pop_back();
  }
  return from_coefficients(r, var);
}

// Fixed evaluation points for the coprimality shortcut.
const std::array<std::array<long, 3>, 6> kProbes = {
    {{3, 5, 7}, {-2, 11, 4}, {13, -6, 9}, {17, 19, -23}, {-29, 31, 37}, {41, -43, -47}}};

// True when some evaluation of the other variables proves the primitive
// parts share no factor of positive degree in `var`: a common factor G would
// keep its degree under any evaluation where both leading coefficients are
// nonzero, so a constant univariate gcd at any probe rules it out.
bool provably_coprime(const MultiPoly3& a, const MultiPoly3& b, int var) {
  const auto ca = coefficients_in(a, var);
  const auto cb = coefficients_in(b, var);
  for (const auto& probe : kProbes) {
    std::array<Rational, 3> values{Rational(probe[0]), Rational(probe[1]), Rational(probe[2])};
    if (sgn(ca.back().eval({values[0], values[1], values[2]})) == 0) continue;
    if (sgn(cb.back().eval({values[0], values[1], values[2]})) == 0) continue;
    const UniPoly g = gcd(specialize(a, var, values), specialize(b, var, values));
    if (g.degree() == 0) return true;
  }
  return false;
}

MultiPoly3 gcd_rec(const MultiPoly3& a, const MultiPoly3& b) {
  if (a.is_zero()) return normalized(b);
  if (b.is_zero()) return normalized(a);
  const int v = main_variable(a, b);
  if (v < 0) return MultiPoly3(1);

  const MultiPoly3 ca = content_in(a, v);
  const MultiPoly3 cb = content_in(b, v);
  const MultiPoly3 c = gcd_rec(ca, cb);

  MultiPoly3 pa = primitive_part_in(a, v);
  MultiPoly3 pb = primitive_part_in(b, v);
  MultiPoly3 g(1);
  if (pa.degree_in(v) > 0 && pb.degree_in(v) > 0 && !provably_coprime(pa, pb, v)) {
    if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
    while (true) {
      MultiPoly3 r = pseudo_remainder(pa, pb, v);
      if (r.is_zero()) {
        g = pb;
        break;
      }
      if (r.degree_in(v) <= 0) break;
      pa = std::move(pb);
      pb = primitive_part_in(r, v);
    }
  }
  return normalized(c * g);
}

}  // namespace

MultiPoly3 gcd(const MultiPoly3& a, const MultiPoly3& b) { return gcd_rec(a, b); }

namespace {

MultiPoly3 repeated_part(const MultiPoly3& p) {
  MultiPoly3 g = normalized(p);
  for (int v = kX; v <= kZ && !g.is_constant(); ++v) g = gcd(g, derivative(p, v));
  return g;
}

}  // namespace

MultiPoly3 squarefree_part(const MultiPoly3& p) {
  if (p.is_zero()) throw DegenerateInputError("square-free part of the zero polynomial");
  if (p.is_constant()) return MultiPoly3(1);
  const MultiPoly3 g = repeated_part(p);
  if (g.is_constant()) return normalized(p);
  auto q = divide_exact(p, g);
  if (!q) throw InvariantError("gcd with the partials does not divide p");
  return normalized(*q);
}

bool is_squarefree(const MultiPoly3& p) {
  if (p.is_zero()) return false;
  if (p.is_constant()) return true;
  return repeated_part(p).is_constant();
}

}  // namespace jointlab
