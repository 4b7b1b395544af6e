#include "doctest.h"
#include "k3/enumerate.hpp"
#include "k3/fermat.hpp"

#include <set>

using namespace k3;

TEST_CASE("GF9 field axioms") {
  for (int a = 0; a < 9; ++a) {
    GF9 x = GF9::from_index(a);
    CHECK(x.pow(3) == x.conj());
    CHECK(x.pow(9) == x);
    if (!x.is_zero()) CHECK(x * x.inv() == GF9(1, 0));
    for (int b = 0; b < 9; ++b) {
      GF9 y = GF9::from_index(b);
      CHECK(x * y == y * x);
      CHECK((x + y).conj() == x.conj() + y.conj());
      CHECK((x * y).conj() == x.conj() * y.conj());
      for (int c = 0; c < 9; ++c) {
        GF9 z = GF9::from_index(c);
        CHECK(x * (y + z) == x * y + x * z);
      }
    }
  }
  CHECK(GF9::i() * GF9::i() == GF9(-1, 0));
}

TEST_CASE("the 112 lines") {
  const auto& fl = fermat_lines();
  CHECK(fl.points.size() == 280);
  CHECK(fl.lines.size() == 112);
  for (auto& l : fl.lines)
    for (int p : l.points) CHECK(on_fermat(fl.points[std::size_t(p)]));
  int z = zero_section_line();
  CHECK(z >= 0);
  // Frobenius permutes the lines
  Perm fr = frobenius_line_permutation();
  CHECK(std::set<int>(fr.begin(), fr.end()).size() == 112);
}

TEST_CASE("dual graph of the lines") {
  const auto& g = dual_graph_112();
  const auto& fl = fermat_lines();
  for (int v = 0; v < 112; ++v) CHECK(g.degree(v) == 30);
  // three further lines through each point of a line
  for (int p = 0; p < 280; ++p) {
    int through = 0;
    for (auto& l : fl.lines) through += std::count(l.points.begin(), l.points.end(), p);
    CHECK(through == 4);
  }
  // ten common neighbours for disjoint lines
  int checked = 0;
  for (int a = 0; a < 112; ++a)
    for (int b = a + 1; b < 112; ++b) {
      if (g.eta(a, b) > 0) continue;
      int common = 0;
      for (int x = 0; x < 112; ++x) common += g.eta(a, x) > 0 && g.eta(b, x) > 0;
      CHECK(common == 10);
      ++checked;
    }
  CHECK(checked == 112 * 81 / 2);
}

TEST_CASE("the Neron-Severi lattice of the Fermat quartic") {
  const NS3& s = ns3();
  CHECK(s.lattice.rank() == 22);
  CHECK(s.lattice.det() == -9);
  CHECK(s.lattice.signature() == Signature{1, 21, 0});
  CHECK(DiscriminantForm(s.lattice).describe() == "(Z/3)^2");
  const auto& g = dual_graph_112();
  std::set<std::vector<Int>> distinct;
  for (int a = 0; a < 112; ++a) {
    distinct.insert(std::vector<Int>(s.classes.row(a).begin(), s.classes.row(a).end()));
    CHECK(s.lattice.pair(s.line_class(a), s.h3) == 1);
    for (int b = 0; b < 112; ++b)
      CHECK(s.lattice.pair(s.line_class(a), s.line_class(b)) == (a == b ? Int(-2) : Int(g.eta(a, b))));
  }
  CHECK(distinct.size() == 112);
  CHECK(s.lattice.norm(s.h3) == 4);
}

TEST_CASE("the elliptic fibration") {
  const Fibration& f = fermat_fibration();
  CHECK(f.fibers.size() == 6);
  CHECK(f.sections.size() == 64);
  CHECK(f.values == std::vector<std::string>{"0", "1", "-1", "i", "-i", "inf"});
  const NS3& s = ns3();
  IntVector fiber_class;
  for (auto& fib : f.fibers) {
    IntVector sum = IntVector::Zero(22);
    for (int l : fib) sum += s.line_class(l);
    if (fiber_class.size() == 0) fiber_class = sum;
    CHECK(sum == fiber_class);
  }
  CHECK(s.lattice.norm(fiber_class) == 0);
  for (int sec : f.sections) CHECK(s.lattice.pair(fiber_class, s.line_class(sec)) == 1);
  CHECK(f.bisections.size() == 24);
  for (int l : f.bisections) CHECK(s.lattice.pair(fiber_class, s.line_class(l)) == 2);
  int z = zero_section_line();
  CHECK(std::count(f.sections.begin(), f.sections.end(), z) == 1);
  auto tors = torsion_sections(s, f, z);
  CHECK(tors.size() == 16);
  CHECK(std::count(tors.begin(), tors.end(), z) == 1);
  CHECK(torsion_group_invariants(s, f, z) == std::vector<Integer>{4, 4});
}

TEST_CASE("L40 and the specialization embedding") {
  const L40Data& d = l40();
  CHECK(d.lines.size() == 40);
  CHECK(d.s0.rank() == 20);
  CHECK(d.s0.is_hyperbolic());
  CHECK(DiscriminantForm(d.s0).describe() == "(Z/4)^2");
  CHECK(is_primitive(d.rho));
  CHECK(d.s0.norm(d.h0) == 40);
  for (int k = 0; k < 40; ++k) CHECK(d.s0.pair(IntVector(d.classes.row(k)), d.h0) == 2);
  auto q1 = qp_graph(1);
  CHECK(find_isomorphism(d.graph, q1.graph));
  auto gamma = induced_covering(d.graph);
  CHECK(is_qp_covering(d.graph, gamma));
}

TEST_CASE("PGU4 and the alpha tuples") {
  const Pgu4& g = pgu4();
  CHECK(g.group.order() == 13063680);
  CHECK(g.group.orbit(0).size() == 112);
  const NS3& s = ns3();
  for (std::size_t k = 0; k < g.matrices.size(); ++k) {
    CHECK(is_unitary(g.matrices[k]));
    CHECK(is_isometry(s.lattice, g.isometries[k]));
    CHECK(IntVector(s.h3 * g.isometries[k]) == s.h3);
    // the isometry moves classes like the permutation moves lines
    for (int l = 0; l < 112; ++l) CHECK(IntVector(s.line_class(l) * g.isometries[k]) == s.line_class(g.line_perms[k][std::size_t(l)]));
  }
  auto c = count_alpha_tuples();
  CHECK(c.tuples == 13063680u);
  CHECK(c.stabilizer_order == 1);
  CHECK(c.l40_orbit == 13608);
  CHECK(c.l40_stabilizer == 960);
  CHECK(c.l40_quadrangles == 30);
}
