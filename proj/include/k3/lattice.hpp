#pragma once

#include "k3/linalg.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace k3 {

struct Signature {
  int positive = 0, negative = 0, zero = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

// exact signature by symmetric Gaussian elimination over Q
Signature signature(const IntMatrix& gram);

class Lattice {
 public:
  Lattice() = default;
  explicit Lattice(IntMatrix gram, std::vector<std::string> labels = {});

  const IntMatrix& gram() const { return gram_; }
  Eigen::Index rank() const { return gram_.rows(); }
  const std::vector<std::string>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> l) { labels_ = std::move(l); }

  Int pair(const IntVector& x, const IntVector& y) const { return (x * gram_).dot(y); }
  Int norm(const IntVector& x) const { return pair(x, x); }
  Rational pair(const RatVector& x, const RatVector& y) const;
  Rational norm(const RatVector& x) const { return pair(x, x); }
  // integer pairings of x with the basis (= x * G); the dual coordinates
  IntVector pairings(const IntVector& x) const { return x * gram_; }

  Integer det() const;
  const Signature& signature() const;
  bool is_even() const;
  bool is_hyperbolic() const;
  bool is_negative_definite() const;

  // dual vectors live in L (x) Q with coordinates in this basis
  RatVector dual_from_pairings(const IntVector& p) const;  // y with y*G == p
  const RatMatrix& gram_inverse() const;

 private:
  IntMatrix gram_;
  std::vector<std::string> labels_;
  mutable std::optional<Signature> sig_;
  mutable std::optional<RatMatrix> ginv_;
};

// Isometries act from the right: x -> x * M, with M G M^T == G.
bool is_isometry(const Lattice& L, const IntMatrix& m);
IntMatrix reflection(const Lattice& L, const IntVector& root);  // x -> x + <x,r> r

struct SubLattice {
  Lattice lattice;
  IntMatrix basis;  // rows in ambient coordinates
};
SubLattice sublattice(const Lattice& L, const IntMatrix& generators);  // Z-span, HNF basis
SubLattice orthogonal_complement(const Lattice& L, const IntMatrix& vectors);
Lattice direct_sum(const Lattice& a, const Lattice& b);
Lattice scaled(const Lattice& L, Int factor);

// ---- discriminant forms

class DiscriminantForm {
 public:
  explicit DiscriminantForm(const Lattice& L);

  const std::vector<Integer>& orders() const { return orders_; }  // d1 | d2 | ...
  std::size_t size() const { return size_; }
  const RatMatrix& generators() const { return gens_; }  // lifts in L (x) Q

  using Element = std::vector<Integer>;  // coordinates mod d_i
  Element element_of(const RatVector& dual) const;
  RatVector lift(const Element& e) const;
  std::size_t index_of(const Element& e) const;
  Element element_at(std::size_t idx) const;
  std::size_t index_of_dual(const RatVector& dual) const { return index_of(element_of(dual)); }

  Rational q(const Element& e) const;  // in [0,2)
  Rational b(const Element& x, const Element& y) const;  // in [0,1)
  Element add(const Element& x, const Element& y) const;
  Element scale(const Element& x, const Integer& k) const;

  std::string describe() const;  // e.g. "(Z/4)^2"
  const Lattice& lattice() const { return L_; }

 private:
  Lattice L_;
  std::vector<Integer> orders_;
  RatMatrix gens_;
  BigMatrix coord_map_;  // dual y -> y * coord_map_ gives coordinates before reduction
  std::size_t size_ = 1;
};

Rational mod_q(const Rational& x, const Integer& m);  // representative in [0,m)

// a permutation of the |A| elements of A(L)
using FormPerm = std::vector<std::size_t>;

// all automorphisms of A(L) preserving q, by brute force on generator images
std::vector<FormPerm> orthogonal_group_of_form(const DiscriminantForm& q, std::size_t bound = 10000);
// action of an isometry of L on A(L)
FormPerm induced_disc_action(const DiscriminantForm& q, const IntMatrix& isometry);
FormPerm compose(const FormPerm& first, const FormPerm& then);
FormPerm inverse(const FormPerm& p);
FormPerm identity_perm(std::size_t n);
// closure of generators inside the symmetric group on A(L)
std::vector<FormPerm> perm_closure(const std::vector<FormPerm>& gens, std::size_t n);

// Overlattice of L1 (+) L2 obtained by adding lifts of pairs (x_i, y_i) of
// discriminant elements. Throws if the resulting subgroup is not isotropic.
struct Overlattice {
  Lattice lattice;
  RatMatrix basis;  // rows in coordinates of L1 (+) L2
  Integer index;
};
Overlattice glue_overlattice(const DiscriminantForm& q1, const DiscriminantForm& q2,
                             const std::vector<std::pair<DiscriminantForm::Element, DiscriminantForm::Element>>& glue);
Overlattice overlattice(const Lattice& L, const RatMatrix& extra);  // add rational vectors to L

// ---- root systems

// Dynkin type of a set of simple roots given by their Gram matrix, e.g.
// {{"A",2},{"A",2}}; components sorted.
using AdeType = std::vector<std::pair<char, int>>;
AdeType ade_type_of_simple_roots(const IntMatrix& gram);
std::string ade_string(const AdeType& t);
// simple roots among the given roots with respect to a positive functional
// (pairing vector), i.e. positive roots that are not sums of two positive ones
std::vector<IntVector> simple_roots(const Lattice& L, const std::vector<IntVector>& roots, const RatVector& functional);

// all isometries of a definite lattice (basis images among equal-norm vectors)
std::vector<IntMatrix> definite_isometries(const Lattice& L, std::size_t limit = 100000);

}  // namespace k3
