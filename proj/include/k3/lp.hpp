#pragma once

#include "k3/scalar.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace k3 {

// Is target in the closed convex cone spanned by the rows of gens?
// Phase-one revised simplex over Q. Pricing is steered in double precision
// but every pivot, the optimality test and both certificates are exact:
//   member:     target = sum c_i gens_i with c_i > 0
//   not member: x with gens_i . x >= 0 for all i and target . x < 0
struct ConeTest {
  bool member = false;
  std::vector<std::pair<std::size_t, Rational>> combination;
  RatVector separator;
  std::size_t pivots = 0;
};
ConeTest cone_membership(const IntMatrix& gens, const IntVector& target);

// exact re-check of a certificate; cone_membership calls it before returning
bool verify_cone_test(const IntMatrix& gens, const IntVector& target, const ConeTest& t);

}  // namespace k3
