#pragma once

#include "k3/borcherds.hpp"
#include "k3/fermat.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace k3 {

// ---- the period condition
//
// For both surfaces O(q_S) is dihedral of order 8 and the admissible
// actions on A(S) form its unique cyclic subgroup of order 4 (a
// characteristic subgroup, so no period needs to be computed).
struct PeriodData {
  DiscriminantForm q;
  std::vector<FormPerm> group;    // O(q_S)
  std::vector<FormPerm> allowed;  // the cyclic subgroup of order 4
  bool satisfied(const IntMatrix& g) const;
};
PeriodData period_subgroup(const Lattice& S);  // throws unless O(q_S) is D_8
const PeriodData& period_x3();
const PeriodData& period_x0();

// O(q_S3) -> O(q_S0) through the complement Q of rho(S0) in S3: an element
// sigma goes to the h in O(Q) inducing it on the 3-part of A(Q), then to the
// action of h on the 2-part, read on A(S0) through the gluing.
struct PeriodTransfer {
  SubLattice q;                       // the complement, in S3 coordinates
  std::vector<IntMatrix> oq;          // O(Q)
  bool three_part_bijective = false;  // O(Q) -> O(q_S3)
  bool two_part_bijective = false;    // O(Q) -> O(q_S0)
  std::vector<std::pair<FormPerm, FormPerm>> map;  // sigma -> its image
  bool allowed_to_allowed = false;
  FormPerm operator()(const FormPerm& sigma) const;
};
const PeriodTransfer& period_transfer();

// ---- finite groups given by permutations of a set of curves

// isometry of S from a permutation of curves whose classes include a basis
IntMatrix isometry_from_curve_perm(const IntMatrix& classes, const Perm& p);

struct AutX0 {
  PermGroup graph_aut;  // Aut of the L40 dual graph, on the 40 lines
  PermGroup aut;   // members satisfying the period condition = Aut(X0,h0)
  std::vector<Perm> elements;  // of aut, sorted
  GraphMap gamma;  // L40 -> Petersen
  PermGroup petersen_image;  // on the 10 Petersen vertices
  std::vector<Perm> kernel;  // Gal(mu), sorted
  bool kernel_exponent_two = false, kernel_abelian = false;
  IntMatrix isometry(const Perm& p) const { return isometry_from_curve_perm(l40().classes, p); }
  Perm petersen_action(const Perm& p) const;
};
const AutX0& aut_x0_h0();

struct AutX0Fibre {
  IntVector f;                   // sum of one fibre quadrangle, in S0
  std::vector<IntVector> orbit;  // f^(1..5)
  PermGroup stabilizer;          // Aut(X0,f), on the 40 lines
  std::vector<std::array<int, 4>> blocks;  // the six quadrangles, L40 indices
  Integer block_image_order, block_kernel_order;
  bool galois_is_intersection = false;  // kernel of aut_x0_h0 = meet of the 5 stabilizers
};
const AutX0Fibre& aut_x0_f();

// ---- double-plane polarizations

struct DoublePlaneData {
  IntVector b;
  bool nef = false, base_point_free = false;
  std::vector<IntVector> sigma;  // simple roots of the roots orthogonal to b
  AdeType type;
  std::optional<IntMatrix> involution;
  std::string failure;  // why the involution was not produced
  // set by dpp_for_wall: how many b of the same degree qualified, their types
  std::size_t alternatives = 0;
  std::vector<std::string> alternative_types;
  bool is_polarization() const { return nef && base_point_free; }
};
DoublePlaneData dpp_test(const Lattice& S, const IntVector& a, const IntVector& b);
// +1 on b, reversal on each A_n chain of sigma, -1 on the rest; validated
// (integral isometry, involution, nef cone preserved). Fills involution or
// failure.
void double_plane_involution(const Lattice& S, const IntVector& a, DoublePlaneData& d);
// a double-plane polarization b orthogonal to wall k whose involution maps
// chamber c across it, with <a,b> minimal; among those, the one with the
// largest singular locus
std::optional<DoublePlaneData> dpp_for_wall(const Embedding& e, const Chamber& c, int k, const IntVector& a,
                                            int max_degree = 60);

// ---- transporters

// an isometry satisfying the period condition that carries c to the
// chamber across wall k; the image chamber is returned alongside
std::optional<Transport> adjacent_transporter(const Embedding& e, const PeriodData& pd, const Chamber& c, int k,
                                              const std::vector<IntMatrix>& aut_c, const PermGroup* aut_outer);

// D3 with its symmetry and orbit data, and D0 likewise
struct SurfaceChamber {
  const Embedding* e = nullptr;
  Chamber chamber;
  IntVector h;                     // the ample class
  std::vector<IntMatrix> aut;      // generators of Aut(chamber) (with non-period ones)
  std::vector<IntMatrix> aut_period;  // generators of Aut(X,h)
  PermGroup aut_outer;             // Aut(chamber) on the outer walls
  std::vector<std::vector<int>> inner_orbits;  // under Aut(X,h), largest last
};
const SurfaceChamber& chamber_x3();
const SurfaceChamber& chamber_x0();

struct GeneratorReport {
  std::string surface;
  struct Item {
    std::size_t orbit_size;
    int wall;
    Rational norm;
    Int pairing_h;
    IntMatrix g;
    Int degree;  // <h, h^g>
    bool period = false, adjacent = false;
  };
  std::vector<Item> items;
};
GeneratorReport aut_generators(const SurfaceChamber& sc);

// one row per inner-wall orbit: the double-plane polarization across it
struct DoublePlaneRow {
  std::size_t orbit_size = 0;
  int wall = -1;
  Rational norm;
  Int pairing_h = 0;
  std::optional<DoublePlaneData> dpp;
  Int pairing_b = 0;  // <h,b>
  Int degree = 0;     // <h, h^g(b)>
};
std::vector<DoublePlaneRow> double_plane_table(const SurfaceChamber& sc);

// rho(b) for the polarizations of X0 across the walls not separated by
// roots of S3 (the orbits of sizes 40 and 320), tested again on X3
struct LiftedPolarization {
  std::size_t orbit_size = 0;
  Int degree0 = 0;     // <h0, h0^g(b)>
  IntVector b;         // rho(b), in S3
  Int pairing_h3 = 0;
  DoublePlaneData on_x3;
  Int degree3 = 0;     // <h3, h3^g(rho b)>
};
std::vector<LiftedPolarization> lifted_polarizations();

// ---- specialization X3 -> X0

struct SpecializationReport {
  bool h0_in_d3 = false;  // in D3, zero exactly on the walls over P0
  std::vector<int> perp_walls;        // walls of D3 whose hyperplanes contain P0
  bool perp_in_648 = false;
  Rational perp_pairing;
  std::size_t partners = 0, perpendicular_pairs = 0;
  Integer pair_stabilizer;            // in PGU4, of {v1,v2}
  std::size_t chambers_over_d0 = 0;
  std::vector<IntMatrix> coset_reps;  // identity, gamma1, gamma2, eps
  std::vector<std::size_t> coset_sizes;
  bool restriction_onto = false;      // 3840 restrictions = Aut(X0,h0)
  std::map<std::size_t, bool> separated;  // D0 orbit size -> S3-root separates h0, h0^g
  std::vector<IntMatrix> aut_d0;      // Aut(X3,D0), all elements on S3
  bool restriction_respects_period = false;
};
const SpecializationReport& specialization_analysis();

struct CurveCounts {
  std::map<int, std::size_t> counts;         // d -> |C_d|
  std::map<int, std::vector<std::size_t>> orbit_sizes;  // under PGU4, when computed
};
// smooth rational curve classes of degree d on X3, up to max_degree
CurveCounts curve_counts(int max_degree, bool orbits = false);

// ---- Enriques involutions

struct EnriquesCertificate {
  Perm perm;   // on the curves of the group
  IntMatrix g;
  SubLattice fixed, anti;
  bool rank10_hyperbolic = false, half_even_unimodular = false, anti_root_free = false;
  bool passes() const { return rank10_hyperbolic && half_even_unimodular && anti_root_free; }
};
EnriquesCertificate enriques_test(const Lattice& S, const IntMatrix& g);

struct EnriquesScan {
  std::size_t involutions = 0;
  std::vector<EnriquesCertificate> passing;
  bool conjugate = false, in_kernel = false;
  bool fibre_pattern = false;          // l0<->l2, l1<->l3 on fixed quadrangles
  std::vector<int> fixed_blocks;       // per passing involution
  WeightedGraph quotient;              // of the first one
  Lattice quotient_lattice;
  std::string quotient_disc;
  bool disjoint_from_image = false;    // <C, C^eps> = 0 for every line
};
const EnriquesScan& enriques_scan();
WeightedGraph enriques_quotient_graph(const IntMatrix& classes, const Lattice& S, const Perm& eps);

struct Eps3Report {
  std::size_t candidates = 0;  // involutions of Aut(X3,D0) restricting to Enriques ones
  IntMatrix eps3;
  Int degree = 0;              // <h3, h3^eps3>
  bool fourth_chamber = false;
  int fixed_blocks = 0;
  bool fibre_pattern = false;
  bool quotient_isomorphic = false;
  bool pullbacks_are_lines = false;
};
const Eps3Report& eps3_analysis();

}  // namespace k3
