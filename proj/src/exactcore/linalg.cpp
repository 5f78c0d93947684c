#include "jointlab/errors.hpp"
#include "jointlab/exact.hpp"

#include <utility>

namespace jointlab {

Mat::Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Mat::Mat(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) throw ShapeError("matrix entry count does not match shape");
}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat Mat::from_rows(const std::vector<std::vector<Rational>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  Mat m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw ShapeError("ragged rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<Rational> Mat::apply(const std::vector<Rational>& v) const {
  if (v.size() != cols_) throw ShapeError("vector length does not match column count");
  std::vector<Rational> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Rational acc = 0;
    for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

namespace {

// Integer working copy: every row multiplied by the lcm of its denominators.
// Row scaling changes neither the rank nor the nullspace.
struct IntMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<Integer> a;
  Integer& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
};

IntMatrix to_integer_rows(const Mat& m, Integer* scale_product = nullptr) {
  IntMatrix out{m.rows(), m.cols(), std::vector<Integer>(m.rows() * m.cols())};
  if (scale_product) *scale_product = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out.at(i, j) = m(i, j).get_num() * (l / m(i, j).get_den());
    }
    if (scale_product) *scale_product *= l;
  }
  return out;
}

struct Echelon {
  IntMatrix m;
  std::vector<std::size_t> pivot_cols;
  int swap_sign = 1;
};

// Fraction-free (Bareiss) forward elimination. Pivot: the first row at or
// below the current one with a nonzero entry in the leftmost unresolved
// column. Every intermediate entry is a minor of the input, so the division
// by the previous pivot is exact.
Echelon bareiss_echelon(IntMatrix m) {
  Echelon e;
  Integer prev = 1;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
    std::size_t pr = row;
    while (pr < m.rows && sgn(m.at(pr, col)) == 0) ++pr;
    if (pr == m.rows) continue;
    if (pr != row) {
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(pr, j), m.at(row, j));
      e.swap_sign = -e.swap_sign;
    }
    const Integer pivot = m.at(row, col);
    for (std::size_t i = row + 1; i < m.rows; ++i) {
      const Integer factor = m.at(i, col);
      for (std::size_t j = col + 1; j < m.cols; ++j) {
        Integer v = pivot * m.at(i, j) - factor * m.at(row, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m.at(i, j) = std::move(v);
      }
      m.at(i, col) = 0;
    }
    prev = pivot;
    e.pivot_cols.push_back(col);
    ++row;
  }
  e.m = std::move(m);
  return e;
}

}  // namespace

std::size_t rank(const Mat& m) { return bareiss_echelon(to_integer_rows(m)).pivot_cols.size(); }

std::vector<std::vector<Rational>> nullspace(const Mat& m) {
  Echelon e = bareiss_echelon(to_integer_rows(m));
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;

  std::vector<std::vector<Rational>> basis;
  for (std::size_t free_col = 0; free_col < n; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<Rational> x(n);
    x[free_col] = 1;
    for (std::size_t k = e.pivot_cols.size(); k-- > 0;) {
      const std::size_t pc = e.pivot_cols[k];
      Rational acc = 0;
      for (std::size_t j = pc + 1; j < n; ++j) {
        if (sgn(x[j]) != 0 && sgn(e.m.at(k, j)) != 0) acc += Rational(e.m.at(k, j)) * x[j];
      }
      x[pc] = -acc / Rational(e.m.at(k, pc));
    }
    auto ints = primitive_integers(x);
    std::vector<Rational> v;
    v.reserve(n);
    for (auto& z : ints) v.emplace_back(z);
    basis.push_back(std::move(v));
  }
  return basis;
}

Rational determinant(const Mat& m) {
  if (m.rows() != m.cols()) throw ShapeError("determinant of a non-square matrix");
  if (m.rows() == 0) return 1;
  Integer scale;
  Echelon e = bareiss_echelon(to_integer_rows(m, &scale));
  const std::size_t n = m.rows();
  if (e.pivot_cols.size() < n) return 0;
  Rational d(e.m.at(n - 1, n - 1) * e.swap_sign);
  return d / Rational(scale);
}

Rational det3(const Mat& m) {
  if (m.rows() != 3 || m.cols() != 3) throw ShapeError("det3 expects a 3x3 matrix");
  return determinant(m);
}

Rational det4(const Mat& m) {
  if (m.rows() != 4 || m.cols() != 4) throw ShapeError("det4 expects a 4x4 matrix");
  return determinant(m);
}

}  // namespace jointlab
