#include "jointlab/errors.hpp"
#include "jointlab/exact.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace jointlab;
using jointlab::testing::q;

namespace {

// Plain Gauss-Jordan rank, independent of the library's elimination.
std::size_t oracle_rank(std::vector<std::vector<Rational>> a) {
  std::size_t r = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c] / a[r][c];
      for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
    }
    ++r;
  }
  return r;
}

Mat random_matrix(jointlab::testing::Random& rng, std::size_t rows, std::size_t cols) {
  std::vector<Rational> e;
  for (std::size_t i = 0; i < rows * cols; ++i) e.push_back(rng.coin() ? Rational(0) : rng.rational(4, 3));
  return Mat(rows, cols, e);
}

}  // namespace

TEST_CASE("rationals stay canonical") {
  const Rational a = make_rational(Integer(6), Integer(-4));
  CHECK(a.get_num() == -3);
  CHECK(a.get_den() == 2);
  CHECK(to_string(make_rational(Integer(0), Integer(-7))) == "0");
  CHECK(to_fraction_string(Rational(5)) == "5/1");
  CHECK_THROWS_AS(make_rational(Integer(1), Integer(0)), DegenerateInputError);
  Rational r = a * q(4, 9) + q(1, 3);
  Rational again = r;
  again.canonicalize();
  CHECK(r == again);
}

TEST_CASE("rational literals") {
  CHECK(*parse_rational("-3/6") == q(-1, 2));
  CHECK(*parse_rational("17") == 17);
  CHECK_FALSE(parse_rational("1/0"));
  CHECK_FALSE(parse_rational("1.5"));
  CHECK_FALSE(parse_rational(""));
  CHECK_FALSE(parse_rational("3/"));
}

TEST_CASE("nullspace examples") {
  auto ns = nullspace(Mat(1, 2, {1, -1}));
  REQUIRE(ns.size() == 1);
  CHECK(ns[0] == std::vector<Rational>{1, 1});
  CHECK(nullspace(Mat::identity(3)).empty());
  ns = nullspace(Mat(2, 3, {1, 0, 0, 0, 1, 0}));
  REQUIRE(ns.size() == 1);
  CHECK(ns[0] == std::vector<Rational>{0, 0, 1});
}

TEST_CASE("small determinants") {
  CHECK(det3(Mat::identity(3)) == 1);
  CHECK(det4(Mat::identity(4)) == 1);
  CHECK(det3(Mat(3, 3, {1, 2, 3, 0, 0, 0, 4, 5, 6})) == 0);
  CHECK(det3(Mat(3, 3, {0, 1, 0, -1, 0, 0, 0, 0, 1})) == 1);
  CHECK_THROWS_AS(det3(Mat::identity(4)), ShapeError);
  CHECK_THROWS_AS(det4(Mat(4, 3)), ShapeError);
}

TEST_CASE("rank plus nullity equals columns on random matrices") {
  jointlab::testing::Random rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rows = static_cast<std::size_t>(rng.integer(1, 5));
    const std::size_t cols = static_cast<std::size_t>(rng.integer(1, 6));
    const Mat m = random_matrix(rng, rows, cols);
    std::vector<std::vector<Rational>> raw(rows, std::vector<Rational>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) raw[i][j] = m(i, j);
    }
    const auto ns = nullspace(m);
    CHECK(rank(m) == oracle_rank(raw));
    CHECK(rank(m) + ns.size() == cols);
    for (const auto& v : ns) {
      for (const auto& x : m.apply(v)) CHECK(x == 0);
      // primitive integers, positive first nonzero entry
      std::size_t first = 0;
      while (first < v.size() && v[first] == 0) ++first;
      REQUIRE(first < v.size());
      CHECK(v[first] > 0);
      Integer g = 0;
      for (const auto& x : v) {
        CHECK(x.get_den() == 1);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
      }
      CHECK(g == 1);
    }
  }
}

TEST_CASE("determinant agrees with cofactor expansion") {
  jointlab::testing::Random rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const Mat m = random_matrix(rng, 3, 3);
    const Rational cof = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    CHECK(determinant(m) == cof);
    CHECK(det3(m) == cof);
  }
}

TEST_CASE("integer cube root ceiling") {
  CHECK(ceil_cbrt(Rational(0)) == 0);
  CHECK(ceil_cbrt(Rational(27)) == 3);
  CHECK(ceil_cbrt(Rational(28)) == 4);
  CHECK(ceil_cbrt(q(1, 8)) == 1);
}
