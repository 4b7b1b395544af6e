#include "k3/leech.hpp"

#include "k3/enumerate.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace k3 {

std::vector<int> GolayCode::weight_distribution() const {
  std::vector<int> d(25, 0);
  for (auto w : words) d[std::size_t(std::popcount(w))]++;
  return d;
}

const GolayCode& golay_code() {
  static const GolayCode code = [] {
    // generator polynomial of the QR code mod 23
    const int g[] = {0, 2, 4, 5, 6, 10, 11};
    GolayCode c;
    for (int k = 0; k < 12; ++k) {
      std::uint32_t w = 0;
      for (int e : g) w |= 1u << (e + k);
      if (std::popcount(w) % 2) w |= 1u << 23;  // parity extension
      c.basis.push_back(w);
    }
    for (std::uint32_t m = 0; m < 4096; ++m) {
      std::uint32_t w = 0;
      for (int k = 0; k < 12; ++k)
        if (m >> k & 1) w ^= c.basis[std::size_t(k)];
      c.words.push_back(w);
    }
    std::sort(c.words.begin(), c.words.end());
    auto d = c.weight_distribution();
    if (d[0] != 1 || d[8] != 759 || d[12] != 2576 || d[16] != 759 || d[24] != 1)
      throw std::logic_error("golay_code: wrong weight distribution");
    return c;
  }();
  return code;
}

const LeechModel& leech() {
  static const LeechModel model = [] {
    const auto& code = golay_code();
    IntMatrix gens(12 + 24 + 1, 24);
    gens.setZero();
    Eigen::Index r = 0;
    for (auto w : code.basis) {
      for (int i = 0; i < 24; ++i)
        if (w >> i & 1) gens(r, i) = 2;
      ++r;
    }
    for (int j = 1; j < 24; ++j, ++r) gens(r, 0) = 4, gens(r, j) = 4;
    gens(r++, 0) = 8;
    gens(r, 0) = -3;
    for (int j = 1; j < 24; ++j) gens(r, j) = 1;
    IntMatrix b = row_basis(gens);
    if (b.rows() != 24) throw std::logic_error("leech: generators have wrong rank");
    IntMatrix g8 = b * b.transpose();
    IntMatrix g(24, 24);
    for (int i = 0; i < 24; ++i)
      for (int j = 0; j < 24; ++j) {
        if (g8(i, j).get() % 8 != 0) throw std::logic_error("leech: non-integral inner product");
        g(i, j) = g8(i, j) / 8;
      }
    LeechModel m{Lattice(g), b};
    if (abs(narrow(m.lattice.det())) != 1 || !m.lattice.is_even())
      throw std::logic_error("leech: not even unimodular");
    return m;
  }();
  return model;
}

IntVector L26Model::leech_root(const IntVector& lambda) const {
  IntVector r = IntVector::Zero(26);
  r.head(24) = lambda;
  Int n = -lattice.norm(r);  // |lambda|^2, even
  r[24] = n / 2 - 1;
  r[25] = 1;
  return r;
}

const L26Model& l26_with_weyl() {
  static const L26Model model = [] {
    IntMatrix g = IntMatrix::Zero(26, 26);
    g.topLeftCorner(24, 24) = -leech().lattice.gram();
    g(24, 25) = g(25, 24) = 1;
    L26Model m{Lattice(g), IntVector::Zero(26)};
    m.weyl[24] = 1;
    const Lattice& L = m.lattice;
    if (abs(narrow(L.det())) != 1 || !L.is_even() || !L.is_hyperbolic())
      throw std::logic_error("l26_with_weyl: not an even unimodular hyperbolic lattice");
    return m;
  }();
  return model;
}

void verify_weyl_vector(const L26Model& m) {
  const Lattice& L = m.lattice;
  if (L.norm(m.weyl) != 0 || gcd_row(m.weyl) != 1) throw std::logic_error("weyl vector: not primitive isotropic");
  // <w>^perp / <w> is spanned by the Leech coordinates
  Lattice quotient(IntMatrix(L.gram().topLeftCorner(24, 24)));
  if (!short_vectors(quotient, -2).empty()) throw std::logic_error("weyl vector: quotient has roots");
}

}  // namespace k3
