#include "k3/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace k3 {

namespace {

using Index = Eigen::Index;

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;  // truncates toward zero
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

void swap_rows(BigMatrix& m, Index i, Index j) {
  if (i != j) m.row(i).swap(m.row(j));
}
void swap_cols(BigMatrix& m, Index i, Index j) {
  if (i != j) m.col(i).swap(m.col(j));
}
// row_i -= q * row_j
void sub_row(BigMatrix& m, Index i, Index j, const Integer& q) {
  if (q == 0) return;
  for (Index c = 0; c < m.cols(); ++c) m(i, c) -= q * m(j, c);
}
void sub_col(BigMatrix& m, Index i, Index j, const Integer& q) {
  if (q == 0) return;
  for (Index r = 0; r < m.rows(); ++r) m(r, i) -= q * m(r, j);
}

BigMatrix big_identity(Index n) {
  BigMatrix id = BigMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) id(i, i) = 1;
  return id;
}

}  // namespace

SmithForm smith_normal_form(const BigMatrix& m) {
  const Index r = m.rows(), c = m.cols();
  SmithForm f{big_identity(r), m, big_identity(c)};
  BigMatrix& D = f.D;
  for (Index t = 0; t < std::min(r, c); ++t) {
    for (;;) {
      // smallest nonzero |entry| in the trailing block
      Index pr = -1, pc = -1;
      Integer best = 0;
      for (Index i = t; i < r; ++i)
        for (Index j = t; j < c; ++j) {
          if (D(i, j) == 0) continue;
          Integer a = abs(D(i, j));
          if (pr < 0 || a < best) best = a, pr = i, pc = j;
        }
      if (pr < 0) goto done;
      swap_rows(D, t, pr), swap_rows(f.U, t, pr);
      swap_cols(D, t, pc), swap_cols(f.V, t, pc);
      bool clean = true;
      for (Index i = t + 1; i < r; ++i) {
        Integer q = floor_div(D(i, t), D(t, t));
        sub_row(D, i, t, q), sub_row(f.U, i, t, q);
        if (D(i, t) != 0) clean = false;
      }
      for (Index j = t + 1; j < c; ++j) {
        Integer q = floor_div(D(t, j), D(t, t));
        sub_col(D, j, t, q), sub_col(f.V, j, t, q);
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility: fold an offending row into row t and go again
      bool divides = true;
      for (Index i = t + 1; i < r && divides; ++i)
        for (Index j = t + 1; j < c; ++j)
          if (D(i, j) % D(t, t) != 0) {
            sub_row(D, t, i, Integer(-1)), sub_row(f.U, t, i, Integer(-1));
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (D(t, t) < 0) {
      D.row(t) = -D.row(t);
      f.U.row(t) = -f.U.row(t);
    }
  }
done:
  if (f.U * m * f.V != D) throw std::logic_error("smith_normal_form: verification failed");
  return f;
}

std::vector<Integer> elementary_divisors(const IntMatrix& m) {
  SmithForm f = smith_normal_form(convert<Integer>(m));
  std::vector<Integer> out;
  for (Index i = 0; i < std::min(m.rows(), m.cols()); ++i) out.push_back(f.D(i, i));
  return out;
}

HermiteForm hermite_normal_form(const BigMatrix& m) {
  const Index r = m.rows(), c = m.cols();
  HermiteForm h{m, big_identity(r), {}};
  BigMatrix& H = h.H;
  Index row = 0;
  for (Index col = 0; col < c && row < r; ++col) {
    for (;;) {
      Index p = -1;
      for (Index i = row; i < r; ++i)
        if (H(i, col) != 0 && (p < 0 || abs(H(i, col)) < abs(H(p, col)))) p = i;
      if (p < 0) break;
      swap_rows(H, row, p), swap_rows(h.U, row, p);
      bool clean = true;
      for (Index i = row + 1; i < r; ++i) {
        Integer q = floor_div(H(i, col), H(row, col));
        sub_row(H, i, row, q), sub_row(h.U, i, row, q);
        if (H(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (H(row, col) == 0) continue;
    if (H(row, col) < 0) {
      H.row(row) = -H.row(row);
      h.U.row(row) = -h.U.row(row);
    }
    for (Index i = 0; i < row; ++i) {
      Integer q = floor_div(H(i, col), H(row, col));
      sub_row(H, i, row, q), sub_row(h.U, i, row, q);
    }
    h.pivots.push_back(col);
    ++row;
  }
  return h;
}

IntMatrix row_basis(const IntMatrix& gens) {
  HermiteForm h = hermite_normal_form(convert<Integer>(gens));
  return convert<Int>(BigMatrix(h.H.topRows(h.rank())));
}

IntMatrix kernel_basis(const IntMatrix& m) {
  HermiteForm h = hermite_normal_form(convert<Integer>(m));
  BigMatrix k = h.U.bottomRows(m.rows() - h.rank());
  // tidy the basis; the module is unchanged
  if (k.rows() > 0) k = hermite_normal_form(k).H;
  return convert<Int>(k);
}

IntMatrix saturate(const IntMatrix& rows) {
  if (rows.rows() == 0) return rows;
  if (rank(rows) != rows.rows()) throw std::invalid_argument("saturate: rows are linearly dependent");
  IntMatrix perp = kernel_basis(rows.transpose());
  if (perp.rows() == 0) {
    IntMatrix id = IntMatrix::Identity(rows.cols(), rows.cols());
    return id;
  }
  return kernel_basis(perp.transpose());
}

bool is_primitive(const IntMatrix& rows) {
  if (rows.rows() == 0) return true;
  for (const Integer& d : elementary_divisors(rows))
    if (d != 1) return false;
  return true;
}

std::optional<IntVector> solve_integer(const IntMatrix& m, const IntVector& target) {
  if (target.size() != m.cols()) throw std::invalid_argument("solve_integer: size mismatch");
  HermiteForm h = hermite_normal_form(convert<Integer>(m));
  BigVector rest = convert_vec<Integer>(target);
  BigVector y = BigVector::Zero(m.rows());
  for (Index i = 0; i < h.rank(); ++i) {
    Index p = h.pivots[std::size_t(i)];
    if (rest[p] % h.H(i, p) != 0) return std::nullopt;
    y[i] = rest[p] / h.H(i, p);
    rest -= y[i] * h.H.row(i);
  }
  for (Index j = 0; j < rest.size(); ++j)
    if (rest[j] != 0) return std::nullopt;
  return convert_vec<Int>(BigVector(y * h.U));
}

Integer determinant(const BigMatrix& m0) {
  if (m0.rows() != m0.cols()) throw std::invalid_argument("determinant: non-square");
  const Index n = m0.rows();
  if (n == 0) return 1;
  BigMatrix m = m0;
  Integer sign = 1, prev = 1;
  for (Index k = 0; k < n - 1; ++k) {
    if (m(k, k) == 0) {
      Index p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      swap_rows(m, k, p);
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i)
      for (Index j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

namespace {
// reduced row echelon form over Q; returns the pivot columns
std::vector<Index> rref(RatMatrix& a) {
  std::vector<Index> piv;
  Index row = 0;
  for (Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Index p = row;
    while (p < a.rows() && a(p, col) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != row) a.row(p).swap(a.row(row));
    Rational inv = 1 / a(row, col);
    a.row(row) *= inv;
    for (Index i = 0; i < a.rows(); ++i)
      if (i != row && a(i, col) != 0) {
        Rational f = a(i, col);
        a.row(i) -= f * a.row(row);
      }
    piv.push_back(col);
    ++row;
  }
  return piv;
}
}  // namespace

Index rank(const IntMatrix& m) {
  RatMatrix a = convert<Rational>(m);
  return Index(rref(a).size());
}

RatMatrix inverse(const RatMatrix& m) {
  const Index n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("inverse: non-square");
  RatMatrix a(n, 2 * n);
  a.leftCols(n) = m;
  a.rightCols(n) = RatMatrix::Identity(n, n);
  auto piv = rref(a);
  if (Index(piv.size()) < n || piv.back() >= n) throw std::domain_error("inverse: singular matrix");
  return a.rightCols(n);
}

RatVector solve_rational(const RatMatrix& m, const RatVector& b) { return b * inverse(m); }

IntMatrix rational_row_space(const RatMatrix& m) {
  RatMatrix a = m;
  auto piv = rref(a);
  IntMatrix out(Index(piv.size()), m.cols());
  for (Index i = 0; i < Index(piv.size()); ++i) out.row(i) = clear_denominators(a.row(i));
  return out;
}

Integer gcd_row(const IntVector& v) {
  Integer g = 0;
  for (Index i = 0; i < v.size(); ++i) g = gcd(g, Integer(v[i].get()));
  return g;
}

IntVector primitive_part(const IntVector& v) {
  Integer g = gcd_row(v);
  if (g == 0 || g == 1) return v;
  IntVector out(v.size());
  Int gi = narrow(g);
  for (Index i = 0; i < v.size(); ++i) out[i] = v[i] / gi;
  return out;
}

IntVector clear_denominators(const RatVector& v) {
  Integer l = 1;
  for (Index i = 0; i < v.size(); ++i) l = lcm(l, boost::multiprecision::denominator(v[i]));
  IntVector out(v.size());
  for (Index i = 0; i < v.size(); ++i) out[i] = narrow_rational(v[i] * l);
  return primitive_part(out);
}

IntMatrix lll_transform(const IntMatrix& gram, double delta) {
  const Index n = gram.rows();
  BigMatrix G = convert<Integer>(gram);
  BigMatrix T = big_identity(n);
  if (n <= 1) return convert<Int>(T);
  using Real = long double;
  std::vector<std::vector<Real>> mu(std::size_t(n), std::vector<Real>(std::size_t(n), 0));
  std::vector<Real> B(std::size_t(n), 0);
  auto gs_row = [&](Index i) {
    for (Index j = 0; j < i; ++j) {
      Real s = G(i, j).convert_to<Real>();
      for (Index l = 0; l < j; ++l) s -= mu[j][l] * mu[i][l] * B[l];
      mu[i][j] = s / B[j];
    }
    Real s = G(i, i).convert_to<Real>();
    for (Index l = 0; l < i; ++l) s -= mu[i][l] * mu[i][l] * B[l];
    B[i] = s;
    if (!(s > 0)) throw std::domain_error("lll_transform: Gram matrix not positive definite");
  };
  auto reduce = [&](Index k, Index j, const Integer& q) {
    // b_k -= q b_j
    Integer gkj = G(k, j);
    G(k, k) += -2 * q * gkj + q * q * G(j, j);
    for (Index i = 0; i < n; ++i)
      if (i != k) {
        G(k, i) -= q * G(j, i);
        G(i, k) = G(k, i);
      }
    sub_row(T, k, j, q);
  };
  gs_row(0);
  Index k = 1;
  std::size_t guard = 0;
  while (k < n) {
    if (++guard > 1000000) throw std::runtime_error("lll_transform: no convergence");
    gs_row(k);
    for (;;) {
      bool changed = false;
      for (Index j = k - 1; j >= 0; --j) {
        if (std::fabs(double(mu[k][j])) > 0.501) {
          Integer q(std::llround(double(mu[k][j])));
          reduce(k, j, q);
          changed = true;
        }
        gs_row(k);
      }
      if (!changed) break;
    }
    if (B[k] < (Real(delta) - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
      swap_rows(G, k, k - 1), swap_cols(G, k, k - 1), swap_rows(T, k, k - 1);
      gs_row(k - 1);
      k = std::max<Index>(1, k - 1);
      if (k == 1) gs_row(0);
    } else {
      ++k;
    }
  }
  return convert<Int>(T);
}

}  // namespace k3
