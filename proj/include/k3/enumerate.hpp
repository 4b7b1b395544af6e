#pragma once

#include "k3/lattice.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace k3 {

// How Fincke-Pohst prunes. Exact runs the completion of squares over Q.
// Guided runs the same recursion in double precision with a safety margin
// (so it can only visit more nodes, never fewer); in both modes every
// reported vector is re-checked with exact integer arithmetic by the caller.
enum class PruneMode { Exact, Guided };
void set_prune_mode(PruneMode m);
PruneMode prune_mode();

// Integer points z with (z - c) Q (z - c)^T <= bound for a positive definite Q.
class Ellipsoid {
 public:
  explicit Ellipsoid(const IntMatrix& q);
  Eigen::Index dim() const { return q_.rows(); }
  // callback returns false to stop early; points may slightly exceed the
  // bound in Guided mode, never the other way round
  void enumerate(const RatVector& center, const Rational& bound, const std::function<bool(const IntVector&)>& cb,
                 std::optional<PruneMode> mode = std::nullopt) const;
  // Guided enumeration restricted to the cone base_k + (z A)_k >= 0 for
  // every column k of A (n x m). A subtree is cut when even the maximum of
  // a condition over the remaining sub-ellipsoid is negative. The caller
  // re-checks everything exactly.
  void enumerate_in_cone(const RatVector& center, const Rational& bound, const IntVector& base, const IntMatrix& a,
                         const std::function<bool(const IntVector&)>& cb) const;
  std::size_t last_node_count() const { return nodes_; }

 private:
  IntMatrix q_;
  std::vector<Rational> d_;
  std::vector<std::vector<Rational>> mu_;
  std::vector<double> dd_;
  std::vector<std::vector<double>> mud_;
  mutable std::size_t nodes_ = 0;
};

// all v with norm_min <= <v,v> < 0 in a negative definite lattice; one of
// +-v (first nonzero coordinate positive) unless both_signs; sorted
std::vector<IntVector> short_vectors(const Lattice& L, Int norm_min, bool both_signs = false);

// {x in L : <x, h_j> = t_j for all j, norm_min <= <x,x> <= norm_max}. The
// orthogonal complement of the h_j must be negative definite.
class SliceEnumerator {
 public:
  SliceEnumerator(const Lattice& L, const IntMatrix& constraints);
  std::vector<IntVector> solve(const IntVector& pairings, Int norm) const { return solve(pairings, norm, norm); }
  std::vector<IntVector> solve(const IntVector& pairings, Int norm_min, Int norm_max) const;
  void visit(const IntVector& pairings, Int norm_min, Int norm_max, const std::function<bool(const IntVector&)>& cb) const;
  // only the x with <x, w_j> >= lower_j for every row w_j of walls
  // (lower empty means all zero)
  void visit_in_cone(const IntVector& pairings, Int norm_min, Int norm_max, const IntMatrix& walls,
                     const IntVector& lower, const std::function<bool(const IntVector&)>& cb) const;
  std::size_t last_node_count() const { return ell_.last_node_count(); }
  const IntMatrix& kernel() const { return k_; }
  const Lattice& lattice() const { return L_; }

 private:
  Lattice L_;
  IntMatrix p_;   // L.gram() * constraints^T
  IntMatrix k_;   // reduced basis of the kernel (rows)
  IntMatrix kg_;  // k_ * gram
  RatMatrix qinv_;
  Ellipsoid ell_;
};

// all x with <x,x> = n and <x,h> = c; needs <h,h> > 0 in a hyperbolic lattice
std::vector<IntVector> constrained_vectors(const Lattice& L, const IntVector& h, Int n, Int c);
// roots r with <h1,r> > 0 > <h2,r>
std::vector<IntVector> separating_roots(const Lattice& L, const IntVector& h1, const IntVector& h2);

}  // namespace k3
