#pragma once

#include "k3/lattice.hpp"

#include <cstdint>
#include <vector>

namespace k3 {

// Extended binary Golay code from the quadratic residue code of length 23.
// Codewords are 24-bit masks, basis in echelon-free cyclic form.
struct GolayCode {
  std::vector<std::uint32_t> basis;  // 12 words
  std::vector<std::uint32_t> words;  // all 4096, sorted
  std::vector<int> weight_distribution() const;  // index = weight
};
const GolayCode& golay_code();

// The Leech lattice, scaled so that the minimal norm is 4, as a positive
// definite Gram matrix; basis = HNF of the standard generators in the
// sqrt(8)-scaled coordinates.
struct LeechModel {
  Lattice lattice;      // positive definite, det 1, min 4
  IntMatrix coords;     // 24 x 24 basis rows in sqrt(8)-scaled coordinates
};
const LeechModel& leech();

// L26 = Lambda(-1) (+) U. Coordinates 0..23 are the Leech basis, 24 = e and
// 25 = f with <e,f> = 1 and e, f isotropic. The Weyl vector is e.
struct L26Model {
  Lattice lattice;
  IntVector weyl;
  // the Leech root (lambda, |lambda|^2/2 - 1, 1) for lambda in Leech coords
  IntVector leech_root(const IntVector& lambda) const;
  // Leech coordinates of a vector in <w>^perp modulo w
  IntVector leech_part(const IntVector& x) const { return x.head(24); }
};
const L26Model& l26_with_weyl();

// throws unless Lambda(-1) has no vectors of norm -2 (the Weyl vector test)
void verify_weyl_vector(const L26Model& m);

}  // namespace k3
