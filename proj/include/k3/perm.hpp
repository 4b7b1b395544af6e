#pragma once

#include "k3/scalar.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace k3 {

// Permutations act on the right: image of point p under g is g[p], and the
// product g*h means "first g, then h".
using Perm = std::vector<int>;

Perm perm_identity(int n);
Perm perm_mul(const Perm& g, const Perm& h);
Perm perm_inv(const Perm& g);
bool perm_is_identity(const Perm& g);
int perm_order(const Perm& g);

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int x : p) h = (h ^ std::size_t(x)) * 1099511628211ull;
    return h;
  }
};

// Base and strong generating set by the deterministic Schreier-Sims
// algorithm, with Schreier vectors for the transversals.
class PermGroup {
 public:
  PermGroup() = default;
  PermGroup(int degree, const std::vector<Perm>& gens, const std::vector<int>& base_prefix = {});

  int degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }
  Integer order() const;
  bool contains(const Perm& g) const;
  // adds g if it is not already an element; returns whether the group grew
  bool add_generator(const Perm& g);

  const std::vector<int>& base() const { return base_; }
  std::vector<int> orbit(int point) const;
  std::vector<std::vector<int>> orbits() const;
  // every element, for small groups; throws above the cap
  std::vector<Perm> elements(std::size_t cap = 5000000) const;
  // the subgroup fixing the given points one by one (from a fresh chain with
  // those points first in the base)
  PermGroup pointwise_stabilizer(const std::vector<int>& points) const;
  // some element mapping the base point of level i to pt, if pt is in that orbit
  std::optional<Perm> transversal(std::size_t level, int pt) const;
  // strong generators fixing the first `level` base points
  std::vector<Perm> level_generators(std::size_t level) const;

 private:
  struct Level {
    int point;
    std::vector<int> gen_ids;  // indices into strong_
    std::vector<int> sv;       // Schreier vector: -1 root, -2 absent, else index into gen_ids
    std::vector<int> orbit;
  };
  int degree_ = 0;
  std::vector<Perm> gens_;
  std::vector<Perm> strong_, strong_inv_;
  std::vector<int> strong_level_;  // deepest level a strong generator belongs to
  std::vector<int> base_;
  std::vector<Level> levels_;

  void build(const std::vector<int>& prefix);
  void rebuild_level(std::size_t i);
  Perm coset_rep(std::size_t i, int pt) const;
  // returns (residue, level at which sifting stopped)
  std::pair<Perm, std::size_t> sift(const Perm& g) const;
  void add_strong(const Perm& g, std::size_t level);
  void complete(std::size_t from_level);
};

// Orbit of an object under generators with a spanning tree, so that an
// element carrying the start point to any orbit point can be rebuilt.
template <typename T, typename Hash = std::hash<T>, typename Eq = std::equal_to<T>>
struct OrbitTree {
  std::vector<T> points;
  std::vector<int> parent, via;  // parent index and generator index
  std::unordered_map<T, int, Hash, Eq> index;

  template <typename Act>
  OrbitTree(const T& start, std::size_t ngens, Act act, std::size_t cap = 50000000) {
    points.push_back(start);
    parent.push_back(-1), via.push_back(-1);
    index.emplace(start, 0);
    for (std::size_t i = 0; i < points.size(); ++i)
      for (std::size_t s = 0; s < ngens; ++s) {
        T img = act(points[i], s);
        if (index.count(img)) continue;
        if (points.size() >= cap) throw std::length_error("OrbitTree: cap exceeded");
        index.emplace(img, int(points.size()));
        points.push_back(std::move(img));
        parent.push_back(int(i)), via.push_back(int(s));
      }
  }
  std::size_t size() const { return points.size(); }
  int find(const T& x) const {
    auto it = index.find(x);
    return it == index.end() ? -1 : it->second;
  }
  // generator indices w with start^(g_w0 g_w1 ...) = points[i]
  std::vector<int> word(int i) const {
    std::vector<int> w;
    while (parent[std::size_t(i)] >= 0) w.push_back(via[std::size_t(i)]), i = parent[std::size_t(i)];
    return {w.rbegin(), w.rend()};
  }
};

// Stabilizer of the start point of an orbit tree, from Schreier generators.
// act must be the same action the tree was built with; gens are the
// permutations realising the generators on {0..degree-1}.
template <typename T, typename Hash, typename Eq, typename Act>
PermGroup stabilizer_from_orbit(const OrbitTree<T, Hash, Eq>& tree, const std::vector<Perm>& gens, Act act, int degree,
                                const std::vector<int>& base_prefix = {}) {
  std::vector<Perm> reps(tree.size());
  reps[0] = perm_identity(degree);
  for (std::size_t i = 1; i < tree.size(); ++i)
    reps[i] = perm_mul(reps[std::size_t(tree.parent[i])], gens[std::size_t(tree.via[i])]);
  PermGroup stab(degree, {}, base_prefix);
  for (std::size_t i = 0; i < tree.size(); ++i)
    for (std::size_t s = 0; s < gens.size(); ++s) {
      int j = tree.find(act(tree.points[i], s));
      if (j < 0) throw std::logic_error("stabilizer_from_orbit: action does not match the orbit");
      Perm h = perm_mul(perm_mul(reps[i], gens[s]), perm_inv(reps[std::size_t(j)]));
      if (!perm_is_identity(h)) stab.add_generator(h);
    }
  return stab;
}

}  // namespace k3
