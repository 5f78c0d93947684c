#include "jointlab/errors.hpp"
#include "jointlab/poly3.hpp"

#include <algorithm>
#include <set>

namespace jointlab {

namespace {

MultiPoly3 linear_form(const IVec3& n) {
  return MultiPoly3::linear(Rational(n.x), Rational(n.y), Rational(n.z), 0);
}

IVec3 normal_of(const Rational& a, const Rational& b, const Rational& c) {
  return primitive_direction({a, b, c});
}

// Divides `h` by the form of `n` as often as possible; true if at least once.
bool strip_factor(MultiPoly3& h, const IVec3& n) {
  bool found = false;
  const MultiPoly3 l = linear_form(n);
  while (h.degree() >= 1) {
    auto q = divide_exact(h, l);
    if (!q) break;
    h = std::move(*q);
    found = true;
  }
  return found;
}

}  // namespace

std::vector<IVec3> homogeneous_linear_factors(const MultiPoly3& h_in) {
  if (h_in.is_zero()) throw DegenerateInputError("linear factors of the zero polynomial");
  std::set<IVec3> found;
  MultiPoly3 h = h_in;
  const IVec3 axes[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (const auto& e : axes) {
    if (strip_factor(h, e)) found.insert(e);
  }
  if (h.degree() >= 1) {
    // With x, y, z stripped, every restriction to a coordinate plane is a
    // nonzero binary form, and a factor x + b y + c z restricts to a factor
    // of each. Candidate b, c come from roots of the dehomogenized forms.
    const Rational zero(0), one(1);
    auto roots_of = [&](int var, std::array<Rational, 3> values) {
      return rational_roots(specialize(h, var, values));
    };
    const auto beta_roots = roots_of(kX, {zero, one, zero});   // h(t, 1, 0)
    const auto gamma_roots = roots_of(kX, {zero, zero, one});  // h(t, 0, 1)
    for (const auto& rb : beta_roots) {
      for (const auto& rg : gamma_roots) {
        const IVec3 n = normal_of(1, -rb, -rg);
        if (strip_factor(h, n)) found.insert(n);
      }
    }
    // Factors without x: y + c z divides h(0, y, z).
    for (const auto& rc : roots_of(kY, {zero, zero, one})) {
      const IVec3 n = normal_of(0, 1, -rc);
      if (strip_factor(h, n)) found.insert(n);
    }
  }
  return {found.begin(), found.end()};
}

namespace {

// Offsets d such that n . u + d divides p: the line w + s n crosses each
// such plane once, so the offsets come from rational roots of the restriction.
std::vector<Plane3> planes_with_normal(const MultiPoly3& p, const IVec3& n) {
  const Vec3 nv = n.to_vec();
  const Point3 shifts[] = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 2, 3}, {-3, 5, 2}};
  for (const auto& w : shifts) {
    // Restrict along w + s n; retry with another base point if p vanishes there.
    const Line3 transversal{w, n};
    const UniPoly f = restrict_to_line(p, transversal);
    if (f.is_zero()) continue;
    std::vector<Plane3> out;
    for (const auto& s : rational_roots(f)) {
      out.push_back({n, -dot(nv, w + s * nv)});
    }
    return out;
  }
  // Every listed transversal lies on Z(p); fall back to exhaustive base points.
  for (int k = 2; k < 64; ++k) {
    const Point3 w(k, k * k, -k);
    const UniPoly f = restrict_to_line(p, Line3{w, n});
    if (f.is_zero()) continue;
    std::vector<Plane3> out;
    for (const auto& s : rational_roots(f)) out.push_back({n, -dot(nv, w + s * nv)});
    return out;
  }
  throw InvariantError("no transversal line avoids the zero set");
}

bool try_divide(MultiPoly3& current, const Plane3& pi) {
  auto q = divide_exact(current, plane_poly(pi));
  if (!q) return false;
  current = std::move(*q);
  return true;
}

}  // namespace

LinearFactorization linear_factors(const MultiPoly3& p, std::span<const Plane3> extra) {
  if (p.is_zero()) throw DegenerateInputError("linear factors of the zero polynomial");
  if (!is_squarefree(p)) throw PreconditionError("linear_factors expects a square-free polynomial");

  std::vector<Plane3> planes;
  MultiPoly3 current = p;

  std::set<Plane3> tried;
  for (const auto& pi : extra) {
    if (current.degree() < 1) break;
    if (!tried.insert(pi).second) continue;
    if (try_divide(current, pi)) planes.push_back(pi);
  }

  while (current.degree() >= 1) {
    if (current.degree() == 1) {
      const Plane3 pi = plane_of_linear(current);
      if (!try_divide(current, pi)) throw InvariantError("linear polynomial does not divide itself");
      planes.push_back(pi);
      break;
    }
    bool progress = false;
    const MultiPoly3 lead = current.homogeneous_part(current.degree());
    for (const auto& n : homogeneous_linear_factors(lead)) {
      for (const auto& pi : planes_with_normal(current, n)) {
        if (try_divide(current, pi)) {
          planes.push_back(pi);
          progress = true;
        }
      }
    }
    if (!progress) break;
  }
  std::sort(planes.begin(), planes.end());
  return {std::move(planes), std::move(current)};
}

}  // namespace jointlab
