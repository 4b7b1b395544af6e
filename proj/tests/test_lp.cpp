#include "doctest.h"
#include "k3/lp.hpp"

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
  Eigen::Index i = 0;
  for (int x : xs) v[i++] = x;
  return v;
}
}  // namespace

TEST_CASE("cone membership, small cases") {
  IntMatrix quadrant = M({{1, 0}, {0, 1}});
  auto in = cone_membership(quadrant, V({2, 3}));
  CHECK(in.member);
  CHECK(verify_cone_test(quadrant, V({2, 3}), in));
  auto out = cone_membership(quadrant, V({-1, 3}));
  CHECK_FALSE(out.member);
  CHECK(verify_cone_test(quadrant, V({-1, 3}), out));
  CHECK(cone_membership(quadrant, V({0, 0})).member);
  // boundary ray
  CHECK(cone_membership(quadrant, V({0, 5})).member);
  // a pointed cone over a square
  IntMatrix sq = M({{1, 1, 1}, {1, -1, 1}, {-1, 1, 1}, {-1, -1, 1}});
  CHECK(cone_membership(sq, V({0, 0, 1})).member);
  CHECK(cone_membership(sq, V({1, 1, 1})).member);
  CHECK_FALSE(cone_membership(sq, V({2, 0, 1})).member);
  CHECK_FALSE(cone_membership(sq, V({0, 0, -1})).member);
  CHECK_THROWS(cone_membership(sq, V({1, 1})));
}

TEST_CASE("cone membership agrees with generated combinations") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-3, 3), c(0, 2);
  for (int trial = 0; trial < 40; ++trial) {
    IntMatrix g(8, 5);
    for (Eigen::Index i = 0; i < 8; ++i)
      for (Eigen::Index j = 0; j < 5; ++j) g(i, j) = d(rng);
    // a nonnegative combination is always a member
    IntVector t = IntVector::Zero(5);
    for (Eigen::Index i = 0; i < 8; ++i) t += IntVector(g.row(i)) * Int(c(rng));
    auto r = cone_membership(g, t);
    CHECK(r.member);
    // a random target: whichever answer, the certificate must verify
    IntVector u(5);
    for (Eigen::Index j = 0; j < 5; ++j) u[j] = d(rng);
    auto s = cone_membership(g, u);
    CHECK(verify_cone_test(g, u, s));
  }
}
