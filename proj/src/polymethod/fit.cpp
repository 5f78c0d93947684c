#include "jointlab/polymethod.hpp"

#include <algorithm>
#include <cstdint>

namespace jointlab {

namespace {

constexpr std::uint64_t kPrime = 4294967291ULL;  // largest prime below 2^32

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) { return a * b % kPrime; }

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  for (; e; e >>= 1, a = mul_mod(a, a)) {
    if (e & 1) r = mul_mod(r, a);
  }
  return r;
}

std::optional<std::uint64_t> residue(const Rational& q) {
  const Integer P(static_cast<unsigned long>(kPrime));
  Integer num = q.get_num() % P, den = q.get_den() % P;
  if (num < 0) num += P;
  if (sgn(den) == 0) return std::nullopt;
  return mul_mod(num.get_ui(), pow_mod(den.get_ui(), kPrime - 2));
}

Rational monomial_value(const Point3& a, const Monomial& m) {
  Rational v = 1;
  for (int i = 0; i < m.x; ++i) v *= a.x;
  for (int i = 0; i < m.y; ++i) v *= a.y;
  for (int i = 0; i < m.z; ++i) v *= a.z;
  return v;
}

// Indices of rows independent modulo the prime, in input order. Rows that are
// independent mod p are independent over the rationals. Empty when some
// coordinate has no residue.
std::optional<std::vector<std::size_t>> independent_rows_mod_p(const std::vector<Point3>& pts,
                                                               const std::vector<Monomial>& mons) {
  std::vector<std::array<std::uint64_t, 3>> coords;
  for (const auto& a : pts) {
    std::array<std::uint64_t, 3> r{};
    for (std::size_t c = 0; c < 3; ++c) {
      auto v = residue(a[c]);
      if (!v) return std::nullopt;
      r[c] = *v;
    }
    coords.push_back(r);
  }
  const std::size_t n = mons.size();
  std::vector<std::vector<std::uint64_t>> basis;  // each row normalized: pivot entry 1
  std::vector<std::size_t> pivots, chosen;
  for (std::size_t i = 0; i < pts.size() && basis.size() < n; ++i) {
    std::vector<std::uint64_t> row(n);
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = mul_mod(mul_mod(pow_mod(coords[i][0], mons[j].x), pow_mod(coords[i][1], mons[j].y)),
                       pow_mod(coords[i][2], mons[j].z));
    }
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const std::uint64_t f = row[pivots[b]];
      if (f == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        row[j] = (row[j] + kPrime - mul_mod(f, basis[b][j])) % kPrime;
      }
    }
    std::size_t p = 0;
    while (p < n && row[p] == 0) ++p;
    if (p == n) continue;
    const std::uint64_t inv = pow_mod(row[p], kPrime - 2);
    for (auto& v : row) v = mul_mod(v, inv);
    basis.push_back(std::move(row));
    pivots.push_back(p);
    chosen.push_back(i);
  }
  return chosen;
}

Mat evaluation_matrix(const std::vector<Point3>& pts, const std::vector<std::size_t>& rows,
                      const std::vector<Monomial>& mons) {
  Mat m(rows.size(), mons.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t j = 0; j < mons.size(); ++j) m(r, j) = monomial_value(pts[rows[r]], mons[j]);
  }
  return m;
}

MultiPoly3 from_vector(const std::vector<Monomial>& mons, const std::vector<Rational>& v) {
  MultiPoly3 p;
  for (std::size_t j = 0; j < mons.size(); ++j) {
    if (sgn(v[j]) != 0) p.add_term(mons[j], v[j]);
  }
  return p;
}

std::vector<Point3> distinct(std::span<const Point3> points) {
  std::vector<Point3> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

std::vector<std::size_t> all_rows(std::size_t m) {
  std::vector<std::size_t> rows(m);
  for (std::size_t i = 0; i < m; ++i) rows[i] = i;
  return rows;
}

// Nullspace of the evaluation matrix, computed on a row subset when that
// subset provably spans the same row space.
std::vector<std::vector<Rational>> vanishing_basis(const std::vector<Point3>& pts,
                                                   const std::vector<Monomial>& mons) {
  const auto chosen = independent_rows_mod_p(pts, mons);
  if (chosen) {
    if (chosen->size() == mons.size()) return {};
    if (chosen->size() < pts.size()) {
      auto basis = nullspace(evaluation_matrix(pts, *chosen, mons));
      bool complete = true;
      for (const auto& v : basis) {
        const MultiPoly3 q = from_vector(mons, v);
        for (const auto& a : pts) {
          if (sgn(q.eval(a)) != 0) {
            complete = false;
            break;
          }
        }
        if (!complete) break;
      }
      if (complete) return basis;
    }
  }
  return nullspace(evaluation_matrix(pts, all_rows(pts.size()), mons));
}

}  // namespace

int vanishing_degree_bound(std::size_t m) {
  int d = 0;
  while (true) {
    const std::size_t dim = static_cast<std::size_t>((d + 3) * (d + 2) * (d + 1) / 6);
    if (dim > m) return d;
    ++d;
  }
}

std::size_t vanishing_space_dimension(std::span<const Point3> points, int d) {
  const std::vector<Point3> pts = distinct(points);
  const std::vector<Monomial> mons = monomials_up_to(d);
  if (pts.empty()) return mons.size();
  return mons.size() - rank(evaluation_matrix(pts, all_rows(pts.size()), mons));
}

MultiPoly3 fit_vanishing_poly(std::span<const Point3> points) {
  const std::vector<Point3> pts = distinct(points);
  if (pts.empty()) return MultiPoly3(1);
  for (int d = 1;; ++d) {
    const std::vector<Monomial> mons = monomials_up_to(d);
    const auto basis = vanishing_basis(pts, mons);
    if (basis.empty()) continue;
    return squarefree_part(from_vector(mons, basis.front()));
  }
}

}  // namespace jointlab
