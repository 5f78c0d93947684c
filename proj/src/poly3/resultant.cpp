#include "jointlab/errors.hpp"
#include "jointlab/poly3.hpp"

namespace jointlab {

MultiPoly3 poly_determinant(std::vector<std::vector<MultiPoly3>> m) {
  const std::size_t n = m.size();
  for (const auto& row : m) {
    if (row.size() != n) throw ShapeError("determinant of a non-square polynomial matrix");
  }
  if (n == 0) return MultiPoly3(1);
  bool negate = false;
  MultiPoly3 prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return {};
      std::swap(m[k], m[r]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        MultiPoly3 v = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        auto q = divide_exact(v, prev);
        if (!q) throw InvariantError("fraction-free elimination lost exactness");
        m[i][j] = std::move(*q);
      }
      m[i][k] = MultiPoly3();
    }
    prev = m[k][k];
  }
  MultiPoly3 det = m[n - 1][n - 1];
  return negate ? -det : det;
}

MultiPoly3 resultant(const MultiPoly3& p, const MultiPoly3& q, int var) {
  if (p.degree_in(var) < 1 || q.degree_in(var) < 1) {
    throw PreconditionError("resultant needs positive degree in the eliminated variable");
  }
  const std::vector<MultiPoly3> a = coefficients_in(p, var);
  const std::vector<MultiPoly3> b = coefficients_in(q, var);
  const std::size_t dp = a.size() - 1, dq = b.size() - 1;
  const std::size_t n = dp + dq;
  std::vector<std::vector<MultiPoly3>> s(n, std::vector<MultiPoly3>(n));
  for (std::size_t r = 0; r < dq; ++r) {
    for (std::size_t i = 0; i <= dp; ++i) s[r][r + i] = a[dp - i];
  }
  for (std::size_t r = 0; r < dp; ++r) {
    for (std::size_t i = 0; i <= dq; ++i) s[dq + r][r + i] = b[dq - i];
  }
  return poly_determinant(std::move(s));
}

}  // namespace jointlab
