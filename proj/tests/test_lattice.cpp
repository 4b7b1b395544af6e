#include "doctest.h"
#include "k3/enumerate.hpp"
#include "k3/lattice.hpp"

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
Lattice a2() { return Lattice(M({{-2, 1}, {1, -2}})); }
Lattice a3() { return Lattice(M({{-2, 1, 0}, {1, -2, 1}, {0, 1, -2}})); }
Lattice hyperbolic_plane() { return Lattice(M({{0, 1}, {1, 0}})); }
}  // namespace

TEST_CASE("signature") {
  CHECK(a2().signature() == Signature{0, 2, 0});
  CHECK(hyperbolic_plane().signature() == Signature{1, 1, 0});
  CHECK(signature(M({{0, 0}, {0, 0}})) == Signature{0, 0, 2});
  CHECK(direct_sum(hyperbolic_plane(), a2()).is_hyperbolic());
}

TEST_CASE("discriminant forms") {
  DiscriminantForm u(hyperbolic_plane());
  CHECK(u.size() == 1);
  DiscriminantForm q(a2());
  CHECK(q.size() == 3);
  CHECK(q.describe() == "(Z/3)");
  DiscriminantForm::Element g{Integer(1)};
  // -2/3 mod 2 == 4/3
  CHECK(q.q(g) == Rational(4, 3));
  // q(x+y) - q(x) - q(y) == 2 b(x,y) mod 2
  DiscriminantForm q3(direct_sum(a3(), a2()));
  CHECK(q3.size() == 12);
  for (std::size_t i = 0; i < q3.size(); ++i)
    for (std::size_t j = 0; j < q3.size(); ++j) {
      auto x = q3.element_at(i), y = q3.element_at(j);
      CHECK(mod_q(q3.q(q3.add(x, y)) - q3.q(x) - q3.q(y) - 2 * q3.b(x, y), 2) == 0);
    }
}

TEST_CASE("orthogonal groups of small forms") {
  // O(q_{A2}) = {+-1}
  CHECK(orthogonal_group_of_form(DiscriminantForm(a2())).size() == 2);
  // 2A2: (Z/3)^2 with q = -2/3 on both: the form is (-2/3)x^2+(-2/3)y^2 -> dihedral of order 8
  auto o = orthogonal_group_of_form(DiscriminantForm(direct_sum(a2(), a2())));
  CHECK(o.size() == 8);
}

TEST_CASE("induced action is a homomorphism and -1 acts as inversion") {
  Lattice L = direct_sum(a3(), a2());
  DiscriminantForm q(L);
  IntMatrix minus = -IntMatrix::Identity(L.rank(), L.rank());
  FormPerm p = induced_disc_action(q, minus);
  for (std::size_t i = 0; i < q.size(); ++i) CHECK(p[i] == q.index_of(q.scale(q.element_at(i), Integer(-1))));
  IntMatrix s1 = reflection(L, IntVector(IntMatrix::Identity(5, 5).row(0)));
  IntMatrix s2 = reflection(L, IntVector(IntMatrix::Identity(5, 5).row(3)));
  CHECK(induced_disc_action(q, IntMatrix(s1 * s2)) == compose(induced_disc_action(q, s1), induced_disc_action(q, s2)));
}

TEST_CASE("reflection") {
  Lattice L = a3();
  IntVector r(3);
  r << 1, 1, 0;
  CHECK(L.norm(r) == -2);
  IntMatrix s = reflection(L, r);
  CHECK(is_isometry(L, s));
  CHECK(IntVector(r * s) == IntVector(-r));
  CHECK(s * s == IntMatrix::Identity(3, 3));
  CHECK(determinant(s) == -1);
  IntVector bad(3);
  bad << 1, 0, 1;
  CHECK_THROWS(reflection(L, bad));
}

TEST_CASE("orthogonal complement and direct sums") {
  Lattice L = direct_sum(hyperbolic_plane(), a2());
  IntMatrix v = IntMatrix::Identity(4, 4).topRows(2);
  SubLattice c = orthogonal_complement(L, v);
  CHECK(c.lattice.rank() == 2);
  CHECK(abs(c.lattice.det()) == 3);
}

TEST_CASE("overlattices from isotropic glue") {
  DiscriminantForm q1(a2()), q2(a3());
  auto o = glue_overlattice(q1, q2, {});
  CHECK(o.index == 1);
  CHECK(o.lattice.rank() == 5);
  // A3 (+) A1: glue (2 in Z/4, 1 in Z/2)? q(2) on A3 = -1 mod 2 = 1, q on A1 = -1/2 -> sum 1/2 not isotropic
  Lattice a1(M({{-2}}));
  DiscriminantForm qa1(a1), qa3(a3());
  CHECK_THROWS(glue_overlattice(qa3, qa1, {{{Integer(2)}, {Integer(1)}}}));
  // D4 from A1^4 glued by (1,1,1,1)? q = 4 * (-1/2) = -2 == 0 mod 2 : isotropic
  Lattice a1x4 = direct_sum(direct_sum(a1, a1), direct_sum(a1, a1));
  Overlattice d4 = overlattice(a1x4, RatMatrix::Constant(1, 4, Rational(1, 2)));
  CHECK(d4.index == 2);
  CHECK(abs(d4.lattice.det()) == 4);
  CHECK(ade_string(ade_type_of_simple_roots(
            [&] {
              auto roots = short_vectors(d4.lattice, -2);
              RatVector f(4);
              f << Rational(1), Rational(3, 7), Rational(5, 11), Rational(13, 17);
              auto s = simple_roots(d4.lattice, roots, f);
              IntMatrix sm(Eigen::Index(s.size()), 4);
              for (std::size_t i = 0; i < s.size(); ++i) sm.row(Eigen::Index(i)) = s[i];
              return IntMatrix(sm * d4.lattice.gram() * sm.transpose());
            }())) == "D4");
}

TEST_CASE("ADE classification of simple-root Gram matrices") {
  CHECK(ade_string(ade_type_of_simple_roots(direct_sum(a2(), a2()).gram())) == "2A2");
  CHECK(ade_string(ade_type_of_simple_roots(direct_sum(a3(), a2()).gram())) == "A2+A3");
  IntMatrix e6 = IntMatrix::Zero(6, 6);
  for (int i = 0; i < 6; ++i) e6(i, i) = -2;
  auto edge = [&](int i, int j) { e6(i, j) = e6(j, i) = 1; };
  edge(0, 1), edge(1, 2), edge(2, 3), edge(3, 4), edge(2, 5);
  CHECK(ade_string(ade_type_of_simple_roots(e6)) == "E6");
}

TEST_CASE("isometry groups of root lattices") {
  CHECK(definite_isometries(a2()).size() == 12);
  CHECK(definite_isometries(direct_sum(a2(), a2())).size() == 288);
  CHECK(definite_isometries(a3()).size() == 48);
}
