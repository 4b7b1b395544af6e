#pragma once

#include "k3/graph.hpp"
#include "k3/leech.hpp"
#include "k3/lp.hpp"
#include "k3/perm.hpp"

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace k3 {

// A primitive embedding S -> L26 together with the complement R.
// Vectors of S (x) Q are written in the basis of S. A dual vector v of S is
// stored by its pairing vector p = v * G_S, which is integral exactly when
// v lies in S^dual.
class Embedding {
 public:
  Embedding() = default;
  Embedding(const Lattice& S, const IntMatrix& emb);  // checks Gram and primitivity

  const Lattice& S() const { return S_; }
  const Lattice& R() const { return R_; }
  const IntMatrix& emb() const { return emb_; }          // n x 26
  const IntMatrix& r_basis() const { return r_basis_; }  // m x 26
  const Lattice& ambient() const { return l26_with_weyl().lattice; }

  IntVector s_pairings(const IntVector& x) const { return x * sg_; }
  IntVector r_pairings(const IntVector& x) const { return x * rg_; }
  // pairing vector -> vector of S (x) Q, and norms of dual vectors
  RatVector dual_vector(const IntVector& p) const;
  Rational dual_norm(const IntVector& p) const;
  Rational dual_pair(const IntVector& p, const IntVector& q) const;
  RatVector project_s(const IntVector& x) const { return dual_vector(s_pairings(x)); }
  // integral scaled dual vector: det * v (avoids rationals in hot loops)
  IntVector scaled_dual(const IntVector& p) const { return p * adj_; }
  Int det_abs() const { return det_; }
  // the vector of L26 with the given pairings against S and R, if integral
  std::optional<IntVector> lift(const IntVector& s_pair, const IntVector& r_pair) const;
  // image of a vector of S in L26 coordinates
  IntVector to_l26(const IntVector& x) const { return x * emb_; }
  // dual action of an isometry M of S on pairing vectors
  IntVector act_dual(const IntMatrix& M, const IntVector& p) const;

  // elements of R^dual (as pairing vectors against R's basis) with
  // -2 < norm <= 0, sorted
  const std::vector<IntVector>& r_shell() const { return r_shell_; }
  Rational r_dual_norm(const IntVector& q) const;

 private:
  Lattice S_, R_;
  IntMatrix emb_, r_basis_, sg_, rg_, adj_, g_;
  RatMatrix r_inv_, lift_inv_;
  Int det_ = 1;
  std::vector<IntVector> r_shell_;
};

struct Wall {
  IntVector v;      // primitive pairing vector
  Rational norm;    // <v,v>
  bool outer = false;
  IntVector root;   // S coordinates, when outer
  RatVector witness;  // point x with <x,v> < 0 and <x,v'> >= 0 for the other walls
};

struct Chamber {
  IntVector weyl;       // in L26
  RatVector interior;   // S coordinates
  std::vector<Wall> walls;  // outer walls first, each group sorted by v
  std::size_t candidates = 0;  // distinct hyperplanes before the facet test
  std::size_t lp_calls = 0;
  int find(const IntVector& v) const;  // index or -1
  std::vector<int> outer() const;
  std::vector<int> inner() const;
  void reindex();  // after editing walls

 private:
  mutable std::unordered_map<IntVector, int, VecHash, VecEq> index_;
};

// optional symmetry: isometries of S known to preserve the chamber
struct ChamberOptions {
  std::vector<IntMatrix> symmetry;
  std::optional<RatVector> interior;  // defaults to pr_S(weyl)
};

// primitive pairing vectors of the Leech roots whose S-part has negative norm
std::vector<IntVector> wall_candidates(const Embedding& e, const IntVector& weyl);
Chamber chamber_walls(const Embedding& e, const IntVector& weyl, const ChamberOptions& opt = {});

// Weyl vector of the chamber across wall k
IntVector adjacent_weyl(const Embedding& e, const Chamber& c, int k);
// the adjacent chamber itself, with the shared wall checked
Chamber adjacent_chamber(const Embedding& e, const Chamber& c, int k, const ChamberOptions& opt = {});

struct Walk {
  Chamber chamber;
  std::vector<IntVector> crossed;  // wall vectors in crossing order
};
// throws if the segment from the interior to target meets a face of
// codimension two (target needs perturbation)
Walk walk_to(const Embedding& e, const Chamber& start, const RatVector& target);

// ---- isometries between chambers

// the graph of outer-wall roots (multiplicity = pairing); throws on
// negative pairings
WeightedGraph outer_graph(const Lattice& S, const Chamber& c);
// isometry of S sending the roots of c1's outer walls to those of c2's
// along the vertex map, if integral
std::optional<IntMatrix> isometry_from_outer_map(const Lattice& S, const Chamber& c1, const Chamber& c2,
                                                 const std::vector<int>& map);
bool maps_chamber(const Embedding& e, const IntMatrix& g, const Chamber& c1, const Chamber& c2);

struct ChamberGroup {
  std::vector<IntMatrix> generators;
  PermGroup on_outer;  // faithful action on the outer walls
  Integer order() const { return on_outer.order(); }
};
// all isometries of S preserving the wall set, seeded on the outer walls
ChamberGroup chamber_aut(const Embedding& e, const Chamber& c);
// one isometry g with c1^g = c2, optionally subject to an extra test. When
// the first transporter t is rejected, a t is tried for a in Aut(c1)
// (generators aut1, computed if empty) in breadth-first order up to cap.
std::optional<IntMatrix> chamber_transport(const Embedding& e, const Chamber& c1, const Chamber& c2,
                                           const std::function<bool(const IntMatrix&)>& accept = {},
                                           const std::vector<IntMatrix>& aut1 = {}, std::size_t cap = 200000);

// The chamber with Weyl vector w2 as an image of c1, without facet tests:
// the roots among w2's candidates are matched with c1's outer walls, and
// an isometry g with every wall of c1^g among the candidates of w2 gives
// c1^g = chamber(w2) (chambers of one tessellation, one inside the other).
// accept/aut1/cap as in chamber_transport; aut1_outer, if given, is Aut(c1)
// on c1's outer walls and only speeds up the graph matching.
struct Transport {
  IntMatrix g;
  Chamber image;
};
std::optional<Transport> transport_to_weyl(const Embedding& e, const Chamber& c1, const IntVector& w2,
                                           const std::function<bool(const IntMatrix&)>& accept = {},
                                           const std::vector<IntMatrix>& aut1 = {},
                                           const PermGroup* aut1_outer = nullptr, std::size_t cap = 200000);
// image of a chamber under an isometry (walls, witnesses, interior moved)
Chamber transform_chamber(const Embedding& e, const Chamber& c, const IntMatrix& g, const IntVector& new_weyl);

// orbits of the walls (indices) under isometries preserving the chamber
std::vector<std::vector<int>> orbit_walls(const Embedding& e, const std::vector<IntMatrix>& gens, const Chamber& c,
                                          const std::vector<int>& subset);

// ---- the two embeddings

struct LeechConfiguration {
  std::vector<IntVector> lambdas;  // Leech vectors of the four roots
  IntMatrix roots;                 // 4 x 26
  std::size_t tried = 0;           // configurations examined
};
struct Ns3Embedding {
  Embedding e;
  LeechConfiguration config;
  std::vector<int> line_to_root;  // line index -> index into the complement's roots
};
// embedding of S_3 whose complement is spanned by four Leech roots of type
// 2A_2, with the lines carried to the roots r of S' with <r,pr w> = 1
const Ns3Embedding& embed_ns3();
const Embedding& embed_ns0();  // i_3 composed with the specialization map

std::string chamber_to_json(const Embedding& e, const Chamber& c, const IntVector& h);

}  // namespace k3
