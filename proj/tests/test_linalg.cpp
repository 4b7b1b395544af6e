#include "doctest.h"
#include "k3/linalg.hpp"

#include <random>

using namespace k3;

namespace {
IntMatrix M(std::initializer_list<std::initializer_list<int>> rows) {
  IntMatrix m(Eigen::Index(rows.size()), Eigen::Index(rows.begin()->size()));
  Eigen::Index i = 0;
  for (auto& r : rows) {
    Eigen::Index j = 0;
    for (int x : r) m(i, j++) = x;
    ++i;
  }
  return m;
}
IntVector V(std::initializer_list<int> xs) {
  IntVector v(Eigen::Index(xs.size()));
  Eigen::Index j = 0;
  for (int x : xs) v[j++] = x;
  return v;
}
IntMatrix random_matrix(std::mt19937& rng, int r, int c, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}
}  // namespace

TEST_CASE("checked scalar throws instead of wrapping") {
  Int big = Int(INT64_MAX);
  CHECK_THROWS_AS(big + Int(1), std::overflow_error);
  CHECK_THROWS_AS(big * Int(2), std::overflow_error);
  CHECK((Int(7) * Int(-3)).get() == -21);
}

TEST_CASE("smith normal form: small cases") {
  auto f = smith_normal_form(convert<Integer>(M({{2, 0}, {0, 4}})));
  CHECK(f.D(0, 0) == 2);
  CHECK(f.D(1, 1) == 4);
  CHECK(f.U == BigMatrix::Identity(2, 2));
  CHECK(f.V == BigMatrix::Identity(2, 2));

  auto z = smith_normal_form(BigMatrix::Zero(2, 2));
  CHECK(z.D == BigMatrix::Zero(2, 2));

  auto a2 = elementary_divisors(M({{-2, 1}, {1, -2}}));
  CHECK(a2[0] == 1);
  CHECK(a2[1] == 3);
}

TEST_CASE("smith normal form: random matrices satisfy U m V = D with divisibility") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    int r = 1 + trial % 6, c = 1 + (trial * 5) % 7;
    BigMatrix m = convert<Integer>(random_matrix(rng, r, c, -9, 9));
    auto f = smith_normal_form(m);
    CHECK(f.U * m * f.V == f.D);
    CHECK(abs(determinant(f.U)) == 1);
    CHECK(abs(determinant(f.V)) == 1);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j)
        if (i != j) CHECK(f.D(i, j) == 0);
    for (int i = 0; i + 1 < std::min(r, c); ++i)
      if (f.D(i + 1, i + 1) != 0) CHECK(f.D(i + 1, i + 1) % f.D(i, i) == 0);
  }
}

TEST_CASE("determinant: Bareiss agrees with cofactor expansion on 3x3") {
  std::mt19937 rng(3);
  for (int t = 0; t < 50; ++t) {
    IntMatrix m = random_matrix(rng, 3, 3, -5, 5);
    auto e = [&](int i, int j) { return m(i, j).get(); };
    long long cof = e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
                    e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
    CHECK(determinant(m) == cof);
  }
}

TEST_CASE("kernel basis") {
  CHECK(kernel_basis(IntMatrix::Identity(3, 3)).rows() == 0);
  IntMatrix k = kernel_basis(M({{1, 1}, {1, 1}}));
  REQUIRE(k.rows() == 1);
  CHECK(abs(k(0, 0)) == 1);
  CHECK(k(0, 0) == -k(0, 1));
  // 4-cycle of (-2)-curves: Gram has rank 3
  IntMatrix quad = M({{-2, 1, 0, 1}, {1, -2, 1, 0}, {0, 1, -2, 1}, {1, 0, 1, -2}});
  IntMatrix kq = kernel_basis(quad);
  CHECK(kq.rows() == 1);
  CHECK((kq * quad).isZero());
  std::mt19937 rng(11);
  for (int t = 0; t < 20; ++t) {
    IntMatrix m = random_matrix(rng, 6, 3, -4, 4);
    IntMatrix ker = kernel_basis(m);
    CHECK(ker.rows() == 6 - rank(m));
    CHECK((ker * m).isZero());
    CHECK(is_primitive(ker));
  }
}

TEST_CASE("saturate") {
  CHECK(saturate(M({{2, 0}})) == M({{1, 0}}));
  CHECK(saturate(M({{1, 0}})) == M({{1, 0}}));
  IntMatrix s = saturate(M({{2, 2, 0}, {0, 3, 3}}));
  CHECK(s.rows() == 2);
  CHECK(is_primitive(s));
  CHECK(saturate(s) == s);
  CHECK_THROWS(saturate(M({{1, 2}, {2, 4}})));
}

TEST_CASE("solve_integer") {
  CHECK(*solve_integer(IntMatrix::Identity(3, 3), V({4, -1, 2})) == V({4, -1, 2}));
  CHECK(!solve_integer(M({{2, 0}, {0, 2}}), V({1, 0})));
  std::mt19937 rng(5);
  for (int t = 0; t < 30; ++t) {
    IntMatrix m = random_matrix(rng, 4, 5, -3, 3);
    IntVector x = random_matrix(rng, 1, 4, -3, 3);
    IntVector target = x * m;
    auto y = solve_integer(m, target);
    REQUIRE(y);
    CHECK(*y * m == target);
  }
}

TEST_CASE("inverse and rational row space") {
  RatMatrix g = convert<Rational>(M({{-2, 1}, {1, -2}}));
  RatMatrix gi = inverse(g);
  CHECK(gi * g == RatMatrix::Identity(2, 2));
  CHECK(gi(0, 0) == Rational(-2, 3));
  CHECK(rational_row_space(convert<Rational>(M({{1, 2}, {2, 4}}))).rows() == 1);
}

TEST_CASE("LLL transform is unimodular and shortens a skewed basis") {
  IntMatrix b = M({{1, 0, 0}, {17, 1, 0}, {-40, 23, 1}});
  IntMatrix g = b * b.transpose();
  IntMatrix t = lll_transform(g);
  CHECK(abs(determinant(t)) == 1);
  IntMatrix r = t * g * t.transpose();
  for (int i = 0; i < 3; ++i) CHECK(r(i, i) == 1);
}
