#include "doctest.h"
#include "k3/enumerate.hpp"
#include "k3/leech.hpp"

#include <bit>

using namespace k3;

TEST_CASE("Golay code") {
  const auto& g = golay_code();
  CHECK(g.basis.size() == 12);
  CHECK(g.words.size() == 4096);
  auto w = g.weight_distribution();
  CHECK(w[0] == 1);
  CHECK(w[8] == 759);
  CHECK(w[12] == 2576);
  CHECK(w[16] == 759);
  CHECK(w[24] == 1);
  // closed under addition, minimum distance 8
  for (std::size_t i = 1; i < g.words.size(); i += 97)
    for (std::size_t j = 0; j < g.words.size(); j += 131) {
      auto s = g.words[i] ^ g.words[j];
      CHECK(std::binary_search(g.words.begin(), g.words.end(), s));
    }
}

TEST_CASE("Leech lattice") {
  const auto& L = leech().lattice;
  CHECK(L.rank() == 24);
  CHECK(L.det() == 1);
  CHECK(L.is_even());
  CHECK(L.signature() == Signature{24, 0, 0});
  for (Eigen::Index i = 0; i < 24; ++i) CHECK(L.gram()(i, i) >= 4);
}

TEST_CASE("L26 and the Weyl vector") {
  const auto& m = l26_with_weyl();
  CHECK(m.lattice.rank() == 26);
  CHECK(abs(Int(narrow(m.lattice.det()))) == Int(1));
  CHECK(m.lattice.is_hyperbolic());
  CHECK(m.lattice.is_even());
  CHECK(m.lattice.norm(m.weyl) == 0);
  // Leech roots: norm -2 and pairing 1 with the Weyl vector
  IntVector lam = IntVector::Zero(24);
  CHECK(m.lattice.norm(m.leech_root(lam)) == -2);
  CHECK(m.lattice.pair(m.leech_root(lam), m.weyl) == 1);
  for (Eigen::Index i = 0; i < 24; ++i) {
    IntVector e = IntVector::Zero(24);
    e[i] = 1;
    IntVector r = m.leech_root(e);
    CHECK(m.lattice.norm(r) == -2);
    CHECK(m.lattice.pair(r, m.weyl) == 1);
    CHECK(m.leech_part(r) == e);
  }
}
