#include "doctest.h"
#include "k3/perm.hpp"

#include <random>
#include <set>
#include <unordered_set>

using namespace k3;

namespace {
// 1-based cycles to a 0-based permutation
Perm cycles(int n, const std::vector<std::vector<int>>& cs) {
  Perm p = perm_identity(n);
  for (auto& c : cs)
    for (std::size_t i = 0; i < c.size(); ++i) p[std::size_t(c[i] - 1)] = c[(i + 1) % c.size()] - 1;
  return p;
}

// closure by breadth-first multiplication
std::size_t brute_order(int n, const std::vector<Perm>& gens) {
  std::unordered_set<Perm, PermHash> seen{perm_identity(n)};
  std::vector<Perm> q{perm_identity(n)};
  for (std::size_t i = 0; i < q.size(); ++i)
    for (auto& g : gens) {
      Perm h = perm_mul(q[i], g);
      if (seen.insert(h).second) q.push_back(h);
    }
  return q.size();
}
}  // namespace

TEST_CASE("permutation arithmetic") {
  Perm a = cycles(5, {{1, 2, 3}}), b = cycles(5, {{1, 2}});
  // first a then b: 1->2->1, 2->3, 3->1->2
  CHECK(perm_mul(a, b) == cycles(5, {{2, 3}}));
  CHECK(perm_is_identity(perm_mul(a, perm_inv(a))));
  CHECK(perm_order(cycles(7, {{1, 2, 3}, {4, 5}})) == 6);
}

TEST_CASE("group orders from Schreier-Sims") {
  CHECK(PermGroup(5, {cycles(5, {{1, 2, 3, 4, 5}}), cycles(5, {{1, 2}})}).order() == 120);
  CHECK(PermGroup(5, {cycles(5, {{1, 2, 3, 4, 5}}), cycles(5, {{1, 2, 3}})}).order() == 60);
  CHECK(PermGroup(10, {cycles(10, {{1, 2, 3, 4, 5, 6, 7, 8, 9, 10}}), cycles(10, {{1, 2}})}).order() == 3628800);
  // PSL(2,7) on the Fano plane
  CHECK(PermGroup(7, {cycles(7, {{1, 2, 3, 4, 5, 6, 7}}), cycles(7, {{2, 3, 5}, {4, 7, 6}}), cycles(7, {{1, 2}, {3, 6}})})
            .order() == 168);
  // Mathieu groups
  PermGroup m11(11, {cycles(11, {{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}}), cycles(11, {{3, 7, 11, 8}, {4, 10, 5, 6}})});
  CHECK(m11.order() == 7920);
  PermGroup m12(12, {cycles(12, {{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}}), cycles(12, {{3, 7, 11, 8}, {4, 10, 5, 6}}),
                     cycles(12, {{1, 12}, {2, 11}, {3, 6}, {4, 8}, {5, 9}, {7, 10}})});
  CHECK(m12.order() == 95040);
  CHECK(m12.contains(perm_mul(m12.generators()[0], m12.generators()[2])));
  CHECK_FALSE(m12.contains(cycles(12, {{1, 2}})));
}

TEST_CASE("random groups agree with brute closure") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 4 + int(rng() % 5);
    std::vector<Perm> gens;
    int k = 1 + int(rng() % 3);
    for (int i = 0; i < k; ++i) {
      // sparse-ish permutations so that small groups show up too
      Perm p = perm_identity(n);
      int swaps = 1 + int(rng() % 2);
      for (int s = 0; s < swaps; ++s) std::swap(p[rng() % std::size_t(n)], p[rng() % std::size_t(n)]);
      gens.push_back(p);
    }
    PermGroup g(n, gens);
    std::size_t bo = brute_order(n, gens);
    CHECK(g.order() == Integer(bo));
    auto els = g.elements();
    CHECK(els.size() == bo);
    std::set<Perm> distinct(els.begin(), els.end());
    CHECK(distinct.size() == bo);
    for (auto& e : els) CHECK(g.contains(e));
    // incremental construction gives the same group
    PermGroup inc(n, {});
    for (auto& p : gens) inc.add_generator(p);
    CHECK(inc.order() == g.order());
  }
}

TEST_CASE("orbits and stabilizers") {
  PermGroup s6(6, {cycles(6, {{1, 2, 3, 4, 5, 6}}), cycles(6, {{1, 2}})});
  CHECK(s6.orbits().size() == 1);
  CHECK(s6.pointwise_stabilizer({0, 1}).order() == 24);
  // setwise stabilizer of {0,1} through an orbit of unordered pairs
  using Pair = std::vector<int>;
  auto gens = s6.generators();
  auto act = [&](const Pair& p, std::size_t s) {
    Pair q{gens[s][std::size_t(p[0])], gens[s][std::size_t(p[1])]};
    std::sort(q.begin(), q.end());
    return q;
  };
  OrbitTree<Pair, PermHash> tree(Pair{0, 1}, gens.size(), act);
  CHECK(tree.size() == 15);
  auto stab = stabilizer_from_orbit(tree, gens, act, 6);
  CHECK(stab.order() == 48);
  // the words reproduce the orbit points
  for (std::size_t i = 0; i < tree.size(); ++i) {
    Pair p{0, 1};
    for (int s : tree.word(int(i))) p = act(p, std::size_t(s));
    CHECK(p == tree.points[i]);
  }
  auto t = s6.transversal(0, 3);
  REQUIRE(t);
  CHECK((*t)[std::size_t(s6.base()[0])] == 3);
}
