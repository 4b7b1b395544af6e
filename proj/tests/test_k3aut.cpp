#include "doctest.h"
#include "k3/k3aut.hpp"

#include <set>

using namespace k3;

namespace {
AdeType ade(std::initializer_list<std::pair<char, int>> parts) {
  AdeType t(parts);
  std::sort(t.begin(), t.end());
  return t;
}
std::multiset<std::size_t> sizes(const std::vector<std::vector<int>>& orbits) {
  std::multiset<std::size_t> s;
  for (auto& o : orbits) s.insert(o.size());
  return s;
}
}  // namespace

TEST_CASE("period condition") {
  const PeriodData& p3 = period_x3();
  const PeriodData& p0 = period_x0();
  CHECK(p3.group.size() == 8);
  CHECK(p3.allowed.size() == 4);
  CHECK(p0.group.size() == 8);
  CHECK(p0.allowed.size() == 4);
  // the identity and the projective unitary group are geometric
  CHECK(p3.satisfied(IntMatrix::Identity(22, 22)));
  for (auto& g : pgu4().isometries) CHECK(p3.satisfied(g));
  // the allowed actions form a subgroup
  for (auto& x : p3.allowed)
    for (auto& y : p3.allowed) CHECK(std::count(p3.allowed.begin(), p3.allowed.end(), compose(x, y)) == 1);
}

TEST_CASE("period transfer through the complement") {
  const PeriodTransfer& t = period_transfer();
  IntMatrix g(2, 2);
  g << -12, 0, 0, -12;
  CHECK(t.q.lattice.gram() == g);
  CHECK(t.oq.size() == 8);
  CHECK(t.three_part_bijective);
  CHECK(t.two_part_bijective);
  CHECK(t.allowed_to_allowed);
  CHECK(t(identity_perm(period_x3().q.size())) == identity_perm(period_x0().q.size()));
}

TEST_CASE("Aut(X0,h0)") {
  const AutX0& a = aut_x0_h0();
  CHECK(a.graph_aut.order() == 7680);
  CHECK(a.aut.order() == 3840);
  CHECK(a.elements.size() == 3840);
  CHECK(a.petersen_image.order() == 120);
  CHECK(a.kernel.size() == 32);
  CHECK(a.kernel_exponent_two);
  CHECK(a.kernel_abelian);
  for (std::size_t i = 0; i < a.elements.size(); i += 101) {
    IntMatrix m = a.isometry(a.elements[i]);
    CHECK(is_isometry(l40().s0, m));
    CHECK(period_x0().satisfied(m));
    CHECK(IntVector(l40().h0 * m) == l40().h0);
  }
}

TEST_CASE("Aut(X0,f)") {
  const AutX0Fibre& f = aut_x0_f();
  CHECK(f.stabilizer.order() == 768);
  CHECK(f.orbit.size() == 5);
  CHECK(f.blocks.size() == 6);
  CHECK(f.block_image_order == 24);
  CHECK(f.block_kernel_order == 32);
  CHECK(f.galois_is_intersection);
  CHECK(l40().s0.norm(f.f) == 0);
}

TEST_CASE("Enriques involutions") {
  const EnriquesScan& s = enriques_scan();
  CHECK(s.passing.size() == 6);
  CHECK(s.conjugate);
  CHECK(s.in_kernel);
  CHECK(s.fibre_pattern);
  CHECK(s.disjoint_from_image);
  for (int b : s.fixed_blocks) CHECK(b == 2);
  CHECK(s.quotient.size() == 20);
  CHECK(s.quotient_lattice.rank() == 10);
  CHECK(s.quotient_disc == "(Z/2)^2");
  for (auto& c : s.passing) {
    CHECK(c.passes());
    CHECK(c.fixed.lattice.rank() == 10);
    CHECK(c.anti.lattice.rank() == 10);
  }
  // 20 curves in 10 pairs meeting with multiplicity two
  int doubled = 0;
  for (auto& [i, j, m] : s.quotient.edges()) doubled += m == 2;
  CHECK(doubled == 10);
}

TEST_CASE("D0 and its double planes") {
  const SurfaceChamber& x0 = chamber_x0();
  CHECK(x0.chamber.walls.size() == 624);
  CHECK(sizes(x0.inner_orbits) == std::multiset<std::size_t>{40, 64, 160, 320});
  auto rows = double_plane_table(x0);
  std::map<std::size_t, std::tuple<Rational, Int, Int, AdeType, Int>> expect{
      {64, {Rational(-5, 4), 5, 16, ade({{'A', 3}, {'A', 3}, {'A', 2}, {'A', 2}, {'A', 2}, {'A', 1}, {'A', 1}}), 80}},
      {40, {Rational(-1), 6, 18, ade({{'A', 3}, {'A', 3}, {'A', 3}, {'A', 3}, {'A', 1}, {'A', 1}, {'A', 1}}), 112}},
      {160, {Rational(-1, 2), 8, 26, ade({{'A', 5}, {'A', 4}, {'A', 4}, {'A', 3}}), 296}},
      {320, {Rational(-1, 4), 9, 38, ade({{'A', 7}, {'A', 7}, {'A', 3}, {'A', 1}}), 688}}};
  REQUIRE(rows.size() == 4);
  for (auto& r : rows) {
    auto& [norm, vh, bh, sing, d] = expect.at(r.orbit_size);
    CHECK(r.norm == norm);
    CHECK(r.pairing_h == vh);
    REQUIRE(r.dpp.has_value());
    CHECK(r.pairing_b == bh);
    CHECK(r.dpp->type == sing);
    CHECK(r.degree == d);
  }
  auto gens = aut_generators(x0);
  for (auto& it : gens.items) {
    CHECK(it.period);
    CHECK(it.adjacent);
  }
}

TEST_CASE("smooth rational curves of low degree on X3") {
  auto c = curve_counts(5);
  CHECK(c.counts.at(1) == 112);
  CHECK(c.counts.at(2) == 0);
  CHECK(c.counts.at(3) == 0);
  CHECK(c.counts.at(4) == 18144);
  CHECK(c.counts.at(5) == 0);
}

TEST_CASE("double-plane test on a simple case") {
  // b = h0 / 2 is not integral; a line class is not of norm 2
  const L40Data& d = l40();
  IntVector l = d.classes.row(0);
  CHECK_THROWS(dpp_test(d.s0, d.h0, l));
}
