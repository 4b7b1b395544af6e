#include "doctest.h"
#include "k3/borcherds.hpp"
#include "k3/fermat.hpp"

#include <set>

using namespace k3;

namespace {
// |O(R)| and the image of O(R) -> O(q_R)
std::pair<std::size_t, std::size_t> complement_groups(const Embedding& e) {
  auto iso = definite_isometries(e.R());
  DiscriminantForm q(e.R());
  std::vector<FormPerm> images;
  for (auto& g : iso) images.push_back(induced_disc_action(q, g));
  std::sort(images.begin(), images.end());
  images.erase(std::unique(images.begin(), images.end()), images.end());
  CHECK(orthogonal_group_of_form(q).size() == images.size());  // surjective
  return {iso.size(), images.size()};
}
}  // namespace

TEST_CASE("embedding of S3") {
  const auto& n3 = embed_ns3();
  const Embedding& e = n3.e;
  CHECK(e.S().rank() == 22);
  CHECK(e.R().rank() == 4);
  CHECK(e.R().is_negative_definite());
  CHECK(e.R().det() == 9);
  CHECK(is_primitive(e.emb()));
  auto [o, eta] = complement_groups(e);
  CHECK(o == 288);
  CHECK(eta == 8);
  // every line goes to a root of L26
  for (int l = 0; l < 112; ++l) CHECK(e.ambient().norm(e.to_l26(ns3().line_class(l))) == -2);
}

TEST_CASE("embedding of S0") {
  const Embedding& e = embed_ns0();
  CHECK(e.S().rank() == 20);
  CHECK(e.R().rank() == 6);
  CHECK(e.R().det() == 16);
  auto [o, eta] = complement_groups(e);
  CHECK(o == 4608);
  CHECK(eta == 8);
}

TEST_CASE("the chamber D0") {
  const Embedding& e = embed_ns0();
  const L40Data& d = l40();
  Chamber c = chamber_walls(e, l26_with_weyl().weyl);
  CHECK(c.walls.size() == 624);
  CHECK(c.outer().size() == 40);
  CHECK(c.inner().size() == 584);
  // projection of the Weyl vector is h0/2
  RatVector pr = e.project_s(l26_with_weyl().weyl);
  CHECK(pr * Rational(2) == convert_vec<Rational>(d.h0));
  // the outer walls are the 40 lines, with the L40 graph
  std::set<IntVector, VecLess> roots, lines;
  for (int k : c.outer()) roots.insert(c.walls[std::size_t(k)].root);
  for (Eigen::Index l = 0; l < 40; ++l) lines.insert(IntVector(d.classes.row(l)));
  CHECK(roots == lines);
  CHECK(find_isomorphism(outer_graph(e.S(), c), d.graph).has_value());
  // inner wall invariants
  std::set<std::pair<Rational, Int>> inv;
  for (int k : c.inner()) inv.insert({c.walls[std::size_t(k)].norm, c.walls[std::size_t(k)].v.dot(d.h0)});
  std::set<std::pair<Rational, Int>> expect{
      {Rational(-5, 4), 5}, {Rational(-1), 6}, {Rational(-1, 2), 8}, {Rational(-1, 4), 9}};
  CHECK(inv == expect);
  // witnesses really are witnesses
  for (std::size_t i = 0; i < c.walls.size(); i += 37) {
    const Wall& w = c.walls[i];
    RatVector p = convert_vec<Rational>(w.v);
    CHECK(w.witness.dot(p) < 0);
  }

  SUBCASE("adjacency round trip") {
    int k = c.inner().front();
    Chamber c2 = adjacent_chamber(e, c, k);
    CHECK(c2.find(IntVector(-c.walls[std::size_t(k)].v)) >= 0);
    int back = c2.find(IntVector(-c.walls[std::size_t(k)].v));
    CHECK(adjacent_weyl(e, c2, back) == c.weyl);
    CHECK(c2.walls.size() == c.walls.size());
  }

  SUBCASE("walk into the neighbour") {
    int k = c.inner().front();
    Chamber c2 = adjacent_chamber(e, c, k);
    Walk w = walk_to(e, c, c2.interior);
    CHECK(w.chamber.weyl == c2.weyl);
    REQUIRE(w.crossed.size() == 1);
    CHECK(w.crossed[0] == c.walls[std::size_t(k)].v);
  }

  SUBCASE("transport onto itself and onto a neighbour") {
    auto id = chamber_transport(e, c, c);
    REQUIRE(id.has_value());
    CHECK(maps_chamber(e, *id, c, c));
    int k = c.inner().front();
    IntVector w2 = adjacent_weyl(e, c, k);
    auto t = transport_to_weyl(e, c, w2);
    REQUIRE(t.has_value());
    CHECK(is_isometry(e.S(), t->g));
    CHECK(t->image.walls.size() == c.walls.size());
    CHECK(t->image.find(IntVector(-c.walls[std::size_t(k)].v)) >= 0);
  }

  SUBCASE("symmetry of D0") {
    ChamberGroup g = chamber_aut(e, c);
    CHECK(g.order() == 7680);
    for (auto& m : g.generators) CHECK(maps_chamber(e, m, c, c));
    auto orbits = orbit_walls(e, g.generators, c, c.inner());
    std::size_t total = 0;
    for (auto& o : orbits) {
      total += o.size();
      for (int k : o) {
        CHECK(c.walls[std::size_t(k)].norm == c.walls[std::size_t(o.front())].norm);
        CHECK(c.walls[std::size_t(k)].v.dot(l40().h0) == c.walls[std::size_t(o.front())].v.dot(l40().h0));
      }
    }
    CHECK(total == 584);
  }
}

TEST_CASE("chamber JSON") {
  const Embedding& e = embed_ns0();
  Chamber c = chamber_walls(e, l26_with_weyl().weyl);
  std::string a = chamber_to_json(e, c, l40().h0), b = chamber_to_json(e, c, l40().h0);
  CHECK(a == b);
  CHECK(a.find("\"pairing_h\"") != std::string::npos);
  CHECK(a.find("\"weyl\"") != std::string::npos);
}
