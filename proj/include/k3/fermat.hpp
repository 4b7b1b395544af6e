#pragma once

#include "k3/graph.hpp"
#include "k3/lattice.hpp"
#include "k3/perm.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace k3 {

// F_9 = F_3[i], i^2 = -1. Stored as a + 3b for a + b i, a,b in {0,1,2}.
class GF9 {
 public:
  constexpr GF9() = default;
  constexpr GF9(int a, int b) : v_(std::uint8_t(((a % 3 + 3) % 3) + 3 * ((b % 3 + 3) % 3))) {}
  static constexpr GF9 from_index(int idx) { return GF9(idx % 3, idx / 3); }
  static constexpr GF9 i() { return GF9(0, 1); }

  constexpr int index() const { return v_; }
  constexpr int re() const { return v_ % 3; }
  constexpr int im() const { return v_ / 3; }
  constexpr bool is_zero() const { return v_ == 0; }

  friend constexpr GF9 operator+(GF9 x, GF9 y) { return GF9(x.re() + y.re(), x.im() + y.im()); }
  friend constexpr GF9 operator-(GF9 x, GF9 y) { return GF9(x.re() - y.re(), x.im() - y.im()); }
  friend constexpr GF9 operator-(GF9 x) { return GF9(-x.re(), -x.im()); }
  friend constexpr GF9 operator*(GF9 x, GF9 y) {
    return GF9(x.re() * y.re() - x.im() * y.im(), x.re() * y.im() + x.im() * y.re());
  }
  friend constexpr bool operator==(GF9 x, GF9 y) { return x.v_ == y.v_; }
  friend constexpr bool operator<(GF9 x, GF9 y) { return x.v_ < y.v_; }
  GF9& operator+=(GF9 y) { return *this = *this + y; }
  GF9& operator*=(GF9 y) { return *this = *this * y; }

  constexpr GF9 conj() const { return GF9(re(), -im()); }  // Frobenius x -> x^3
  GF9 inv() const;                                          // throws on zero
  GF9 pow(int e) const;
  std::string str() const;  // e.g. "0", "1", "-1+i"

 private:
  std::uint8_t v_ = 0;
};

using Point3 = std::array<GF9, 4>;
using Mat4 = std::array<std::array<GF9, 4>, 4>;

Point3 normalize(const Point3& p);  // first nonzero coordinate 1
bool on_fermat(const Point3& p);    // x1^4 + x2^4 + x3^4 + x4^4 = 0
std::string point_string(const Point3& p);

struct FermatLine {
  std::array<int, 10> points;  // indices into FermatLines::points, sorted
  std::array<int, 2> canonical() const { return {points[0], points[1]}; }
};

// The 280 F_9-points of F_3 and its 112 lines, both in canonical order.
struct FermatLines {
  std::vector<Point3> points;
  std::vector<FermatLine> lines;
  std::vector<std::vector<int>> line_through;  // 280 x 280 table, -1 if no line
  int line_of(int p, int q) const { return line_through[std::size_t(p)][std::size_t(q)]; }
  int point_index(const Point3& p) const;  // normalizes first; -1 if absent
  std::string line_label(int l) const { return "L" + std::to_string(l); }
  std::string line_string(int l) const;    // the two canonical points
};
const FermatLines& fermat_lines();  // computed once

// 0 or 1 per pair of lines; labels "L0".."L111"
const WeightedGraph& dual_graph_112();

struct NS3 {
  Lattice lattice;            // basis: classes of 22 lines
  std::vector<int> basis_lines;
  IntMatrix classes;          // 112 x 22, row l = class of line l
  IntVector h3;               // hyperplane class, (1/28) * sum of all lines
  IntVector line_class(int l) const { return classes.row(l); }
};
const NS3& ns3();

// a line given by two linear equations (rows of coefficients)
int line_by_equations(const std::array<GF9, 4>& e1, const std::array<GF9, 4>& e2);
int zero_section_line();  // x1 + i x3 - x4 = x2 + x3 - i x4 = 0

// ---- projective unitary group

bool is_unitary(const Mat4& g);  // g^T * conj(g) is a nonzero scalar
Perm line_permutation(const Mat4& g);  // x -> g x on column vectors
Perm frobenius_line_permutation();
// isometry of S_3 (acting on rows) induced by a permutation of the lines
IntMatrix isometry_from_line_perm(const NS3& s, const Perm& p);

struct Pgu4 {
  std::vector<Mat4> matrices;
  std::vector<Perm> line_perms;
  PermGroup group;  // on the 112 lines
  std::vector<IntMatrix> isometries;
};
const Pgu4& pgu4();

// ---- the elliptic fibration [x3^2 - i x4^2 : x1^2 + i x2^2]

struct Fibration {
  std::vector<std::array<int, 4>> fibers;  // each in cyclic (quadrangle) order
  std::vector<std::string> values;         // base point of each fibre
  std::vector<int> sections;               // lines mapped onto P^1
  std::vector<int> bisections;             // the remaining lines, of degree 2 over P^1
};
std::string sigma_value(const Point3& p);  // point of P^1(F_9), "inf" for [1:0]
const Fibration& fermat_fibration();

// sections whose class lies in the primitive closure of <z, fibre lines>
std::vector<int> torsion_sections(const NS3& s, const Fibration& f, int z);
// elementary divisors of <z, fibre lines> inside its primitive closure
std::vector<Integer> torsion_group_invariants(const NS3& s, const Fibration& f, int z);

struct L40Data {
  std::vector<int> lines;  // 24 fibre lines then 16 torsion sections
  WeightedGraph graph;
  Lattice s0;              // <L40>, basis = classes of 20 of its lines
  IntMatrix rho;           // 20 x 22, basis of S_0 written in S_3
  IntMatrix classes;       // 40 x 20, classes of the L40 lines in S_0
  IntVector h0;            // (1/2) * sum of the 40 classes, in S_0
};
const L40Data& l40();

struct AlphaCounts {
  std::uint64_t tuples = 0;            // ordered [z, l0, l1, l2, l3]
  std::array<int, 5> example{};        // first tuple found
  Integer stabilizer_order = 0;        // of the example, in PGU_4
  std::size_t l40_orbit = 0;           // images of L40 under PGU_4
  Integer l40_stabilizer = 0;
  std::size_t l40_quadrangles = 0;
};
AlphaCounts count_alpha_tuples();

}  // namespace k3
