#include "doctest.h"
#include "k3/graph.hpp"

#include <set>

using namespace k3;

namespace {
WeightedGraph cycle_graph(int n) {
  WeightedGraph g(n);
  for (int i = 0; i < n; ++i) g.set(i, (i + 1) % n, 1);
  return g;
}
}  // namespace

TEST_CASE("graph lattices") {
  // a single quadrangle has a one-dimensional kernel
  auto q = lattice_from_graph(cycle_graph(4));
  CHECK(q.lattice.rank() == 3);
  // images of the vertices reproduce the intersection numbers
  auto g = cycle_graph(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(q.lattice.pair(IntVector(q.vertex_images.row(i)), IntVector(q.vertex_images.row(j))) == g.gram()(i, j));
  // A2 chain gives the A2 lattice on the vertices themselves
  WeightedGraph a2(2);
  a2.set(0, 1, 1);
  auto l = lattice_from_graph(a2);
  CHECK(l.lattice.det() == 3);
  CHECK(l.basis_vertices.size() == 2);
}

TEST_CASE("Petersen graph") {
  auto p = petersen();
  CHECK(p.size() == 10);
  CHECK(p.edge_count() == 15);
  for (int v = 0; v < 10; ++v) CHECK(p.degree(v) == 3);
  CHECK(girth(p) == 5);
  CHECK(quadrangles(p).empty());
  auto aut = automorphism_group(p);
  CHECK(aut.order() == 120);
  CHECK(aut.group.orbits().size() == 1);
  auto all = isomorphisms(p, p);
  CHECK(all.size() == 120);
  std::set<std::vector<int>> distinct;
  for (auto& f : all) {
    CHECK(is_graph_map(p, p, f));
    CHECK(aut.group.contains(f.vertex_map));
    distinct.insert(f.vertex_map);
  }
  CHECK(distinct.size() == 120);
  CHECK_THROWS(induced_covering(p));
}

TEST_CASE("isomorphism search on small graphs") {
  CHECK(automorphism_group(cycle_graph(7)).order() == 14);
  // cube graph Q3: order 48
  WeightedGraph cube(8);
  for (int v = 0; v < 8; ++v)
    for (int b = 0; b < 3; ++b)
      if (v < (v ^ (1 << b))) cube.set(v, v ^ (1 << b), 1);
  CHECK(automorphism_group(cube).order() == 48);
  // relabelled copy is isomorphic, a non-isomorphic 3-regular graph is not
  std::vector<int> perm{3, 6, 0, 7, 1, 5, 2, 4};
  WeightedGraph moved(8);
  for (auto& [a, b, m] : cube.edges()) moved.set(perm[std::size_t(a)], perm[std::size_t(b)], m);
  auto f = find_isomorphism(cube, moved);
  REQUIRE(f);
  CHECK(is_graph_map(cube, moved, *f));
  WeightedGraph prism(8);  // two 4-cycles joined, plus a twist: the Moebius ladder on 8 vertices
  for (int i = 0; i < 8; ++i) prism.set(i, (i + 1) % 8, 1);
  for (int i = 0; i < 4; ++i) prism.set(i, i + 4, 1);
  CHECK_FALSE(find_isomorphism(cube, prism));
  // multiplicities matter
  WeightedGraph w1(3), w2(3);
  w1.set(0, 1, 2), w1.set(1, 2, 1);
  w2.set(0, 1, 1), w2.set(1, 2, 1);
  CHECK_FALSE(find_isomorphism(w1, w2));
  CHECK(automorphism_group(w1).order() == 1);
}

TEST_CASE("QP-graph classification") {
  auto r = qp_enumerate();
  CHECK(r.pairs == 6);
  CHECK(r.triples == 48);
  CHECK(r.orbit_sizes == std::vector<std::size_t>{24, 24});
  CHECK(r.flip_switches_orbit);
  CHECK(r.candidates == 1024);
  CHECK(r.all_coverings);
  CHECK(r.classes == 2);
  CHECK(r.parity_separates);
  CHECK(r.class_sizes == std::vector<std::size_t>{512, 512});

  auto l0 = lattice_from_graph(r.q0.graph), l1 = lattice_from_graph(r.q1.graph);
  CHECK(l0.lattice.rank() == 20);
  CHECK(l1.lattice.rank() == 20);
  CHECK(l0.lattice.is_hyperbolic());
  CHECK(l1.lattice.is_hyperbolic());
  CHECK(DiscriminantForm(l0.lattice).describe() == "(Z/2)^2");
  CHECK(DiscriminantForm(l1.lattice).describe() == "(Z/4)^2");
  CHECK_FALSE(find_isomorphism(r.q0.graph, r.q1.graph));

  auto aut = automorphism_group(r.q1.graph);
  CHECK(aut.order() == 7680);
  // every automorphism permutes the fibres; the kernel fixes each fibre
  auto kernel = automorphism_group(r.q1.graph, r.q1.gamma.vertex_map);
  CHECK(kernel.order() == 64);
  for (auto& g : kernel.group.generators()) {
    CHECK(perm_order(g) == 2);
    for (auto& h : kernel.group.generators()) CHECK(perm_mul(g, h) == perm_mul(h, g));
  }
  std::vector<Perm> images;
  for (auto& g : aut.group.generators()) {
    Perm img(10);
    for (int v = 0; v < 40; ++v) img[std::size_t(v / 4)] = g[std::size_t(v)] / 4;
    for (int v = 0; v < 40; ++v) CHECK(g[std::size_t(v)] / 4 == img[std::size_t(v / 4)]);
    images.push_back(img);
  }
  CHECK(PermGroup(10, images).order() == 120);

  // the fibres are recovered from the graph alone
  auto gamma = induced_covering(r.q1.graph);
  CHECK(is_qp_covering(r.q1.graph, gamma));
}

TEST_CASE("QP-covering conditions fail where they should") {
  auto q = qp_graph(1);
  // four disjoint Petersen copies over the identity: no quadrangles over edges
  auto p = petersen();
  WeightedGraph four(40);
  GraphMap proj;
  for (int c = 0; c < 4; ++c)
    for (auto& [a, b, m] : p.edges()) four.set(4 * a + c, 4 * b + c, m);
  for (int x = 0; x < 40; ++x) proj.vertex_map.push_back(x / 4);
  CHECK_FALSE(is_qp_covering(four, proj));
  // moving one vertex to another fibre breaks the fibre sizes
  auto bad = q.gamma;
  std::swap(bad.vertex_map[0], bad.vertex_map[4]);
  bad.vertex_map[0] = 2;
  CHECK_FALSE(is_qp_covering(q.graph, bad));
  // swapping two vertices between fibres keeps sizes but breaks the edge condition
  auto swapped = q.gamma;
  std::swap(swapped.vertex_map[0], swapped.vertex_map[39]);
  CHECK_FALSE(is_qp_covering(q.graph, swapped));
}

TEST_CASE("graph JSON and DOT") {
  auto p = petersen();
  auto text = p.to_json();
  auto back = WeightedGraph::from_json(text);
  CHECK(back.to_json() == text);
  CHECK(back.labels() == p.labels());
  auto dot = p.to_dot("P");
  CHECK(dot.find("graph P {") == 0);
  CHECK(dot.find(" -- ") != std::string::npos);
}
