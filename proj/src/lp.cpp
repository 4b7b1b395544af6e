#include "k3/lp.hpp"

#include <limits>
#include <stdexcept>

namespace k3 {

using Index = Eigen::Index;

namespace {

struct Simplex {
  const IntMatrix& gens;  // N x n, columns of A are its rows (sign-flipped)
  Index n, N;
  std::vector<int> sign;
  RatMatrix binv;               // n x n
  std::vector<Index> basis;     // >= N means artificial (basis[i] - N)
  std::vector<Rational> xb;
  std::size_t pivots = 0;

  Simplex(const IntMatrix& g, const IntVector& b) : gens(g), n(g.cols()), N(g.rows()) {
    sign.resize(static_cast<std::size_t>(n));
    binv = RatMatrix::Identity(n, n);
    for (Index i = 0; i < n; ++i) {
      sign[std::size_t(i)] = b[i] < 0 ? -1 : 1;
      basis.push_back(N + i);
      xb.push_back(Rational((b[i] < 0 ? -b[i] : b[i]).get()));
    }
  }

  Int a(Index i, Index j) const { return gens(j, i) * Int(sign[std::size_t(i)]); }

  RatVector prices() const {
    RatVector pi = RatVector::Zero(n);
    for (Index i = 0; i < n; ++i)
      if (basis[std::size_t(i)] >= N) pi += binv.row(i);
    return pi;
  }
  Rational reduced_cost(const RatVector& pi, Index j) const {
    Rational s = 0;
    for (Index i = 0; i < n; ++i)
      if (a(i, j) != 0) s += pi[i] * a(i, j).get();
    return -s;
  }
  bool in_basis(Index j) const {
    for (auto b : basis)
      if (b == j) return true;
    return false;
  }

  // entering column or -1 at optimality
  Index choose(const RatVector& pi, bool bland) const {
    if (!bland) {
      std::vector<double> pd(static_cast<std::size_t>(n));
      for (Index i = 0; i < n; ++i) pd[std::size_t(i)] = pi[i].convert_to<double>();
      Index best = -1;
      double bestv = -1e-9;
      for (Index j = 0; j < N; ++j) {
        double s = 0;
        for (Index i = 0; i < n; ++i) s -= pd[std::size_t(i)] * double(a(i, j).get());
        if (s < bestv) bestv = s, best = j;
      }
      if (best >= 0 && reduced_cost(pi, best) < 0) return best;
    }
    for (Index j = 0; j < N; ++j)
      if (!in_basis(j) && reduced_cost(pi, j) < 0) return j;
    return -1;
  }

  void run() {
    std::size_t degenerate = 0;
    for (;;) {
      RatVector pi = prices();
      Index j = choose(pi, degenerate > 50);
      if (j < 0) return;
      RatVector u = RatVector::Zero(n);
      for (Index k = 0; k < n; ++k)
        if (a(k, j) != 0) u += binv.col(k).transpose() * Rational(a(k, j).get());
      Index leave = -1;
      Rational best;
      for (Index i = 0; i < n; ++i) {
        if (u[i] <= 0) continue;
        Rational ratio = xb[std::size_t(i)] / u[i];
        if (leave < 0 || ratio < best || (ratio == best && basis[std::size_t(i)] < basis[std::size_t(leave)]))
          leave = i, best = ratio;
      }
      if (leave < 0) throw std::logic_error("cone_membership: unbounded phase-one problem");
      degenerate = best == 0 ? degenerate + 1 : 0;
      Rational piv = u[leave];
      binv.row(leave) /= piv;
      xb[std::size_t(leave)] /= piv;
      for (Index i = 0; i < n; ++i) {
        if (i == leave || u[i] == 0) continue;
        Rational f = u[i];
        binv.row(i) -= binv.row(leave) * f;
        xb[std::size_t(i)] -= xb[std::size_t(leave)] * f;
      }
      basis[std::size_t(leave)] = j;
      ++pivots;
    }
  }
};

}  // namespace

bool verify_cone_test(const IntMatrix& gens, const IntVector& target, const ConeTest& t) {
  const Index n = gens.cols();
  if (t.member) {
    RatVector s = RatVector::Zero(n);
    for (auto& [i, c] : t.combination) {
      if (c <= 0) return false;
      s += convert_vec<Rational>(IntVector(gens.row(Index(i)))) * c;
    }
    return s == convert_vec<Rational>(target);
  }
  if (t.separator.size() != n) return false;
  auto dot = [&](const IntVector& v) {
    Rational s = 0;
    for (Index i = 0; i < n; ++i) s += t.separator[i] * v[i].get();
    return s;
  };
  for (Index j = 0; j < gens.rows(); ++j)
    if (dot(gens.row(j)) < 0) return false;
  return dot(target) < 0;
}

ConeTest cone_membership(const IntMatrix& gens, const IntVector& target) {
  if (gens.cols() != target.size()) throw std::invalid_argument("cone_membership: dimension mismatch");
  ConeTest out;
  if (target.isZero()) {
    out.member = true;
    return out;
  }
  Simplex s(gens, target);
  s.run();
  out.pivots = s.pivots;
  Rational obj = 0;
  for (std::size_t i = 0; i < s.basis.size(); ++i)
    if (s.basis[i] >= s.N) obj += s.xb[i];
  if (obj == 0) {
    out.member = true;
    for (std::size_t i = 0; i < s.basis.size(); ++i)
      if (s.basis[i] < s.N && s.xb[i] > 0) out.combination.emplace_back(std::size_t(s.basis[i]), s.xb[i]);
  } else {
    RatVector pi = s.prices();
    out.separator = RatVector(s.n);
    for (Index i = 0; i < s.n; ++i) out.separator[i] = -pi[i] * s.sign[std::size_t(i)];
  }
  if (!verify_cone_test(gens, target, out)) throw std::logic_error("cone_membership: certificate failed");
  return out;
}

}  // namespace k3
