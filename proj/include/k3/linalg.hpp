#pragma once

#include "k3/scalar.hpp"

#include <optional>
#include <vector>

namespace k3 {

// Row-vector conventions throughout: a "list of vectors" is a matrix whose
// rows are the vectors, and linear maps act from the right (x -> x * M).

struct SmithForm {
  BigMatrix U, D, V;  // U * m * V == D
};

// Smallest-|entry| pivot, ties by lowest row then column. The identity
// U m V = D is re-checked before returning.
SmithForm smith_normal_form(const BigMatrix& m);
std::vector<Integer> elementary_divisors(const IntMatrix& m);

struct HermiteForm {
  BigMatrix H;  // row echelon, pivots positive, entries above pivots reduced
  BigMatrix U;  // unimodular, U * m == H
  std::vector<Eigen::Index> pivots;
  Eigen::Index rank() const { return Eigen::Index(pivots.size()); }
};
HermiteForm hermite_normal_form(const BigMatrix& m);

// basis of the Z-module spanned by the rows (HNF, zero rows dropped)
IntMatrix row_basis(const IntMatrix& gens);
// basis of {x : x * m == 0}; saturated by construction
IntMatrix kernel_basis(const IntMatrix& m);
// primitive closure of the row span inside Z^n; rows must be independent
IntMatrix saturate(const IntMatrix& rows);
bool is_primitive(const IntMatrix& rows);
// one x with x * m == target, if any
std::optional<IntVector> solve_integer(const IntMatrix& m, const IntVector& target);

Integer determinant(const BigMatrix& m);  // Bareiss
inline Integer determinant(const IntMatrix& m) { return determinant(convert<Integer>(m)); }
Eigen::Index rank(const IntMatrix& m);
RatMatrix inverse(const RatMatrix& m);  // throws if singular
inline RatMatrix inverse(const IntMatrix& m) { return inverse(convert<Rational>(m)); }
// solve x * m == b over Q (m square, invertible)
RatVector solve_rational(const RatMatrix& m, const RatVector& b);
// rank and basis of the Q-row space, as a matrix of primitive integer rows
IntMatrix rational_row_space(const RatMatrix& m);

// LLL on a positive definite Gram matrix. Returns a unimodular T so that
// T * g * T^T is reduced. Floating point only steers the choice of integer
// row operations; T is exact and unimodular regardless, which is all that
// callers rely on.
IntMatrix lll_transform(const IntMatrix& gram, double delta = 0.99);

Integer gcd_row(const IntVector& v);
IntVector primitive_part(const IntVector& v);  // divide by gcd, zero stays zero
// integer row vector proportional (positively) to a rational one
IntVector clear_denominators(const RatVector& v);

}  // namespace k3
