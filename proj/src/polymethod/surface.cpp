#include "jointlab/errors.hpp"
#include "jointlab/polymethod.hpp"

namespace jointlab {

namespace {

// grad x e_j for j = 1, 2, 3 as polynomial vectors.
std::array<std::array<MultiPoly3, 3>, 3> cross_with_axes(const Gradient& g) {
  const MultiPoly3 zero;
  return {{{zero, g[2], -g[1]}, {-g[2], zero, g[0]}, {g[1], -g[0], zero}}};
}

MultiPoly3 quadratic_form(const Hessian& h, const std::array<MultiPoly3, 3>& v) {
  MultiPoly3 out;
  for (int i = 0; i < 3; ++i) {
    if (v[i].is_zero()) continue;
    for (int j = 0; j < 3; ++j) {
      if (v[j].is_zero() || h[i][j].is_zero()) continue;
      out += v[i] * h[i][j] * v[j];
    }
  }
  return out;
}

Rational bilinear(const Mat& h, const Vec3& u, const Vec3& v) {
  Rational s = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) s += u[i] * h(i, j) * v[j];
  }
  return s;
}

}  // namespace

std::array<MultiPoly3, 3> flatness_polys(const MultiPoly3& p) {
  if (p.degree() < 1) throw PreconditionError("flatness polynomials need a non-constant polynomial");
  const Gradient g = gradient(p);
  const Hessian h = hessian(p);
  const auto c = cross_with_axes(g);
  return {quadratic_form(h, c[0]), quadratic_form(h, c[1]), quadratic_form(h, c[2])};
}

std::string to_string(PointKind k) {
  switch (k) {
    case PointKind::OffSurface: return "off_surface";
    case PointKind::Critical: return "critical";
    case PointKind::Flat: return "flat";
    case PointKind::RegularNonFlat: return "regular";
  }
  return "?";
}

std::string to_string(LineKind k) {
  switch (k) {
    case LineKind::Crossing: return "crossing";
    case LineKind::CriticalLine: return "critical";
    case LineKind::FlatLine: return "flat";
    case LineKind::OrdinaryOnSurface: return "ordinary";
  }
  return "?";
}

std::array<IVec3, 2> tangent_basis(const Vec3& g) {
  if (g.is_zero()) throw PreconditionError("tangent basis of a zero gradient");
  const Vec3 crosses[3] = {cross(g, {0, 0, 1}), cross(g, {0, 1, 0}), cross(g, {1, 0, 0})};
  std::optional<Vec3> first;
  for (const auto& c : crosses) {
    if (c.is_zero()) continue;
    if (!first) {
      first = c;
    } else if (!cross(*first, c).is_zero()) {
      return {primitive_direction(*first), primitive_direction(c)};
    }
  }
  throw InvariantError("gradient cross products do not span a plane");
}

Surface::Surface(MultiPoly3 p) : p_(std::move(p)) {
  grad_ = jointlab::gradient(p_);
  hess_ = jointlab::hessian(p_);
  if (p_.degree() >= 1) flat_ = flatness_polys(p_);
}

PointClass Surface::classify_point(const Point3& a) const {
  PointClass out;
  out.value = p_.eval(a);
  out.gradient = eval_gradient(grad_, a);
  for (std::size_t j = 0; j < 3; ++j) out.flatness_values[j] = flat_[j].eval(a);
  out.frame_degenerate = sgn(out.gradient.x) == 0 || sgn(out.gradient.y) == 0 || sgn(out.gradient.z) == 0;
  if (sgn(out.value) != 0) {
    out.kind = PointKind::OffSurface;
    return out;
  }
  if (out.gradient.is_zero()) {
    out.kind = PointKind::Critical;
    return out;
  }
  const auto basis = tangent_basis(out.gradient);
  const Mat h = eval_hessian(hess_, a);
  const Vec3 b1 = basis[0].to_vec(), b2 = basis[1].to_vec();
  out.tangent_basis = basis;
  out.tangent_hessian = {bilinear(h, b1, b1), bilinear(h, b1, b2), bilinear(h, b2, b2)};
  const bool flat = sgn(out.tangent_hessian[0]) == 0 && sgn(out.tangent_hessian[1]) == 0 &&
                    sgn(out.tangent_hessian[2]) == 0;
  out.kind = flat ? PointKind::Flat : PointKind::RegularNonFlat;
  return out;
}

bool Surface::is_critical_line(const Line3& l) const {
  if (!vanishes_on_line(p_, l)) return false;
  for (const auto& g : grad_) {
    if (!vanishes_on_line(g, l)) return false;
  }
  return true;
}

LineKind Surface::classify_line(const Line3& l) const {
  if (!vanishes_on_line(p_, l)) return LineKind::Crossing;
  if (is_critical_line(l)) return LineKind::CriticalLine;
  for (const auto& f : flat_) {
    if (!vanishes_on_line(f, l)) return LineKind::OrdinaryOnSurface;
  }
  // The tangent-plane Hessian entries along l are polynomials in t of degree
  // at most 3d - 4, so 3d - 3 parameters decide them. Critical points pass.
  const int samples = 3 * degree() - 3;
  for (int t = 0; t < samples; ++t) {
    const PointClass pc = classify_point(l.at(t));
    if (pc.kind != PointKind::Flat && pc.kind != PointKind::Critical) {
      return LineKind::OrdinaryOnSurface;
    }
  }
  return LineKind::FlatLine;
}

PointClass classify_point(const MultiPoly3& p, const Point3& a) { return Surface(p).classify_point(a); }
LineKind classify_line(const MultiPoly3& p, const Line3& l) { return Surface(p).classify_line(l); }

CoplanarityReport coplanarity_at_regular(const MultiPoly3& p, const Point3& a,
                                         std::span<const Line3> lines) {
  CoplanarityReport r;
  if (sgn(p.eval(a)) != 0) {
    r.violation = "point is not on the zero set";
    return r;
  }
  const Vec3 g = eval_gradient(gradient(p), a);
  if (g.is_zero()) {
    r.violation = "point is critical";
    return r;
  }
  for (const auto& l : lines) {
    if (!point_on_line(a, l)) {
      r.violation = "line " + to_string(l) + " misses the point";
      return r;
    }
    if (!vanishes_on_line(p, l)) {
      r.violation = "polynomial does not vanish on " + to_string(l);
      return r;
    }
  }
  r.preconditions_met = true;
  r.coplanar = true;
  for (const auto& l : lines) {
    if (sgn(dot(g, l.direction.to_vec())) != 0) r.coplanar = false;
  }
  return r;
}

}  // namespace jointlab
