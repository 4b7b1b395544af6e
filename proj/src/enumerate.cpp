#include "k3/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include <Eigen/LU>
#include <stdexcept>

namespace k3 {

using Index = Eigen::Index;

namespace {
std::atomic<PruneMode> g_mode{PruneMode::Exact};
}  // namespace

void set_prune_mode(PruneMode m) { g_mode = m; }
PruneMode prune_mode() { return g_mode; }

Ellipsoid::Ellipsoid(const IntMatrix& q) : q_(q) {
  const Index n = q.rows();
  RatMatrix a = convert<Rational>(q);
  d_.resize(std::size_t(n));
  mu_.assign(std::size_t(n), std::vector<Rational>(std::size_t(n), Rational(0)));
  for (Index i = 0; i < n; ++i) {
    if (a(i, i) <= 0) throw std::invalid_argument("Ellipsoid: form is not positive definite");
    d_[std::size_t(i)] = a(i, i);
    for (Index j = i + 1; j < n; ++j) mu_[std::size_t(i)][std::size_t(j)] = a(i, j) / a(i, i);
    for (Index j = i + 1; j < n; ++j)
      for (Index l = i + 1; l < n; ++l) a(j, l) -= a(i, j) * a(i, l) / a(i, i);
  }
  dd_.resize(std::size_t(n));
  mud_.assign(std::size_t(n), std::vector<double>(std::size_t(n), 0.0));
  for (std::size_t i = 0; i < std::size_t(n); ++i) {
    dd_[i] = d_[i].convert_to<double>();
    for (std::size_t j = 0; j < std::size_t(n); ++j) mud_[i][j] = mu_[i][j].convert_to<double>();
  }
}

void Ellipsoid::enumerate(const RatVector& center, const Rational& bound, const std::function<bool(const IntVector&)>& cb,
                          std::optional<PruneMode> mode) const {
  const std::size_t n = std::size_t(dim());
  nodes_ = 0;
  if (bound < 0) return;
  IntVector z(static_cast<Index>(n));
  if (n == 0) {
    cb(z);
    return;
  }
  bool stop = false;
  if (mode.value_or(prune_mode()) == PruneMode::Exact) {
    std::vector<Rational> c(n), y(n);  // y_j = z_j - c_j
    for (std::size_t i = 0; i < n; ++i) c[i] = center[Index(i)];
    // recursion over levels n-1 .. 0 with remaining budget r
    std::function<void(std::size_t, const Rational&)> level = [&](std::size_t i, const Rational& r) {
      Rational ctr = c[i];
      for (std::size_t j = i + 1; j < n; ++j)
        if (y[j] != 0) ctr -= mu_[i][j] * y[j];
      Rational rad2 = r / d_[i];
      double rad = std::sqrt(std::max(0.0, rad2.convert_to<double>()));
      double cd = ctr.convert_to<double>();
      Integer lo = Integer(std::floor(cd - rad)) - 1, hi = Integer(std::ceil(cd + rad)) + 1;
      // lo..hi is a superset of the exact range; the exact test below decides
      for (Integer v = lo; v <= hi && !stop; ++v) {
        Rational t = Rational(v) - ctr;
        Rational used = d_[i] * t * t;
        if (used > r) continue;
        ++nodes_;
        z[Index(i)] = narrow(v);
        y[i] = Rational(v) - c[i];
        if (i == 0) {
          if (!cb(z)) stop = true;
        } else {
          level(i - 1, r - used);
        }
      }
      y[i] = 0;
    };
    level(n - 1, bound);
  } else {
    std::vector<double> c(n), y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) c[i] = center[Index(i)].convert_to<double>();
    const double b = bound.convert_to<double>();
    const double slack = 1e-7 * (1.0 + std::fabs(b));
    std::function<void(std::size_t, double)> level = [&](std::size_t i, double r) {
      double ctr = c[i];
      for (std::size_t j = i + 1; j < n; ++j) ctr -= mud_[i][j] * y[j];
      double rad = std::sqrt(std::max(0.0, (r + slack) / dd_[i]));
      std::int64_t lo = std::int64_t(std::ceil(ctr - rad - 1e-9)), hi = std::int64_t(std::floor(ctr + rad + 1e-9));
      for (std::int64_t v = lo; v <= hi && !stop; ++v) {
        double t = double(v) - ctr;
        double used = dd_[i] * t * t;
        if (used > r + slack) continue;
        ++nodes_;
        z[Index(i)] = v;
        y[i] = double(v) - c[i];
        if (i == 0) {
          if (!cb(z)) stop = true;
        } else {
          level(i - 1, std::max(0.0, r - used));
        }
      }
      y[i] = 0.0;
    };
    level(n - 1, b);
  }
}

std::vector<IntVector> short_vectors(const Lattice& L, Int norm_min, bool both_signs) {
  if (!L.is_negative_definite()) throw std::invalid_argument("short_vectors: lattice is not negative definite");
  std::vector<IntVector> out;
  if (norm_min >= 0 || L.rank() == 0) return out;
  IntMatrix pos = -L.gram();
  IntMatrix t = lll_transform(pos);
  Ellipsoid e(IntMatrix(t * pos * t.transpose()));
  RatVector center = RatVector::Zero(L.rank());
  e.enumerate(center, Rational(-norm_min.get()), [&](const IntVector& z) {
    if (z.isZero()) return true;
    IntVector x = z * t;
    Int nx = L.norm(x);
    if (nx < norm_min) return true;
    if (!both_signs) {
      Index i = 0;
      while (x[i] == 0) ++i;
      if (x[i] < 0) return true;
    }
    out.push_back(x);
    return true;
  });
  std::sort(out.begin(), out.end(), VecLess());
  return out;
}

SliceEnumerator::SliceEnumerator(const Lattice& L, const IntMatrix& constraints)
    : L_(L), p_(L.gram() * constraints.transpose()), ell_([&] {
        IntMatrix k0 = kernel_basis(IntMatrix(L.gram() * constraints.transpose()));
        IntMatrix q0 = -(k0 * L.gram() * k0.transpose());
        if (k0.rows() > 0 && signature(q0).positive != k0.rows())
          throw std::invalid_argument("SliceEnumerator: complement of the constraints is not negative definite");
        IntMatrix t = lll_transform(q0);
        k_ = t * k0;
        return IntMatrix(-(k_ * L.gram() * k_.transpose()));
      }()) {
  kg_ = k_ * L.gram();
  if (k_.rows() > 0) qinv_ = inverse(IntMatrix(-(k_ * L.gram() * k_.transpose())));
}

void SliceEnumerator::visit(const IntVector& t, Int norm_min, Int norm_max, const std::function<bool(const IntVector&)>& cb) const {
  auto x0 = solve_integer(p_, t);
  if (!x0) return;
  const Index k = k_.rows();
  IntVector a = *x0 * kg_.transpose();  // a_j = <x0, k_j>
  Int n0 = L_.norm(*x0);
  if (k == 0) {
    if (n0 >= norm_min && n0 <= norm_max) cb(*x0);
    return;
  }
  RatVector ar = convert_vec<Rational>(a);
  RatVector c = ar * qinv_;
  Rational aqa = c.dot(ar);
  // <x,x> = n0 + 2 a.z - zQz  and  (z-c)Q(z-c) = n0 - <x,x> + aQ^-1a
  Rational bound = Rational(n0.get()) - Rational(norm_min.get()) + aqa;
  ell_.enumerate(c, bound, [&](const IntVector& z) {
    IntVector x = *x0 + z * k_;
    Int nx = L_.norm(x);
    if (nx < norm_min || nx > norm_max) return true;
    return cb(x);
  });
}

std::vector<IntVector> SliceEnumerator::solve(const IntVector& t, Int norm_min, Int norm_max) const {
  std::vector<IntVector> out;
  visit(t, norm_min, norm_max, [&](const IntVector& x) {
    out.push_back(x);
    return true;
  });
  std::sort(out.begin(), out.end(), VecLess());
  return out;
}

std::vector<IntVector> constrained_vectors(const Lattice& L, const IntVector& h, Int n, Int c) {
  if (!L.is_hyperbolic()) throw std::invalid_argument("constrained_vectors: lattice is not hyperbolic");
  if (L.norm(h) <= 0) throw std::invalid_argument("constrained_vectors: <h,h> must be positive");
  SliceEnumerator s(L, IntMatrix(h));
  IntVector t(1);
  t[0] = c;
  return s.solve(t, n);
}

std::vector<IntVector> separating_roots(const Lattice& L, const IntVector& h1, const IntVector& h2) {
  std::vector<IntVector> out;
  if (h1 == h2) return out;
  IntMatrix hs(2, L.rank());
  hs.row(0) = h1;
  hs.row(1) = h2;
  IntMatrix m = hs * L.gram() * hs.transpose();
  Integer det = Integer(m(0, 0).get()) * m(1, 1).get() - Integer(m(0, 1).get()) * m(1, 0).get();
  if (det == 0) return out;  // proportional classes in the same cone
  if (det > 0) throw std::invalid_argument("separating_roots: classes do not span a hyperbolic plane");
  SliceEnumerator s(L, hs);
  // norm of the component in span(h1,h2) with pairings (a,b)
  auto plane_norm = [&](Int a, Int b) {
    Integer num = Integer(a.get()) * a.get() * m(1, 1).get() - 2 * Integer(a.get()) * b.get() * m(0, 1).get() +
                  Integer(b.get()) * b.get() * m(0, 0).get();
    return Rational(num, det);
  };
  for (Int a = 1;; a += 1) {
    if (plane_norm(a, -1) < -2) break;
    for (Int b = -1;; b -= 1) {
      if (plane_norm(a, b) < -2) break;
      IntVector t(2);
      t[0] = a, t[1] = b;
      for (auto& r : s.solve(t, -2)) out.push_back(r);
    }
  }
  std::sort(out.begin(), out.end(), VecLess());
  return out;
}

}  // namespace k3

namespace k3 {

void Ellipsoid::enumerate_in_cone(const RatVector& center, const Rational& bound, const IntVector& base,
                                  const IntMatrix& a, const std::function<bool(const IntVector&)>& cb) const {
  const std::size_t n = std::size_t(dim()), m = std::size_t(a.cols());
  nodes_ = 0;
  if (bound < 0) return;
  if (n == 0) {
    for (std::size_t k = 0; k < m; ++k)
      if (base[Index(k)] < 0) return;
    cb(IntVector(0));
    return;
  }
  std::vector<double> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = center[Index(i)].convert_to<double>();
  std::vector<std::int64_t> A(n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < m; ++k) A[i * m + k] = a(Index(i), Index(k)).get();

  // For fixed z_i..z_{n-1} the free coordinates range over an ellipsoid with
  // centre z* (affine in the fixed y) and form q restricted to the leading
  // block Q_i. Condition k is at most  P_k + A_k.z* + sqrt(r * A_k Q_i^-1 A_k).
  struct LevelData {
    std::vector<double> w;      // m
    std::vector<double> cst;    // m
    std::vector<double> g;      // m x (n - i)
  };
  std::vector<LevelData> lv(n);
  Eigen::MatrixXd qd(static_cast<Index>(n), static_cast<Index>(n));
  for (Index i = 0; i < Index(n); ++i)
    for (Index j = 0; j < Index(n); ++j) qd(i, j) = double(q_(i, j).get());
  for (std::size_t i = 1; i < n; ++i) {
    LevelData& L = lv[i];
    Eigen::MatrixXd qi_inv = Eigen::MatrixXd(qd.topLeftCorner(Index(i), Index(i))).inverse();
    // y*_j = sum_{l >= i} M[j][l-i] y_l
    std::vector<std::vector<double>> M(i, std::vector<double>(n - i, 0.0));
    for (std::size_t jj = i; jj-- > 0;)
      for (std::size_t l = i; l < n; ++l) {
        double s = -mud_[jj][l];
        for (std::size_t l2 = jj + 1; l2 < i; ++l2) s -= mud_[jj][l2] * M[l2][l - i];
        M[jj][l - i] = s;
      }
    L.w.resize(m), L.cst.resize(m), L.g.assign(m * (n - i), 0.0);
    for (std::size_t k = 0; k < m; ++k) {
      Eigen::VectorXd ak(static_cast<Index>(i));
      for (std::size_t j = 0; j < i; ++j) ak[Index(j)] = double(A[j * m + k]);
      L.w[k] = std::max(0.0, ak.dot(qi_inv * ak));
      double cs = 0;
      for (std::size_t j = 0; j < i; ++j) cs += ak[Index(j)] * c[j];
      L.cst[k] = cs;
      for (std::size_t l = i; l < n; ++l) {
        double s = 0;
        for (std::size_t j = 0; j < i; ++j) s += ak[Index(j)] * M[j][l - i];
        L.g[k * (n - i) + (l - i)] = s;
      }
    }
  }

  std::vector<std::vector<std::int64_t>> P(n + 1, std::vector<std::int64_t>(m));
  for (std::size_t k = 0; k < m; ++k) P[n][k] = base[Index(k)].get();
  std::vector<double> y(n, 0.0);
  IntVector z(static_cast<Index>(n));
  const double b = bound.convert_to<double>();
  const double slack = 1e-7 * (1.0 + std::fabs(b));
  bool stop = false;
  std::size_t hot = 0;  // condition that cut last; tried first

  // can the subtree below level i (coordinates >= i fixed) still meet every condition?
  auto feasible = [&](std::size_t i, double r) {
    const LevelData& L = lv[i];
    const std::size_t width = n - i;
    auto test = [&](std::size_t k) {
      double e = double(P[i][k]) + L.cst[k];
      const double* g = &L.g[k * width];
      for (std::size_t l = 0; l < width; ++l) e += g[l] * y[i + l];
      double reach = std::sqrt(std::max(0.0, r + slack) * L.w[k]);
      return e + reach * (1 + 1e-9) + 1e-6 >= 0;
    };
    if (!test(hot)) return false;
    for (std::size_t k = 0; k < m; ++k)
      if (k != hot && !test(k)) {
        hot = k;
        return false;
      }
    return true;
  };

  std::function<void(std::size_t, double)> level = [&](std::size_t i, double r) {
    double ctr = c[i];
    for (std::size_t j = i + 1; j < n; ++j) ctr -= mud_[i][j] * y[j];
    double rad = std::sqrt(std::max(0.0, (r + slack) / dd_[i]));
    std::int64_t lo = std::int64_t(std::ceil(ctr - rad - 1e-9)), hi = std::int64_t(std::floor(ctr + rad + 1e-9));
    if (i == 0) {
      // the last coordinate: intersect with the exact intervals
      for (std::size_t k = 0; k < m && lo <= hi; ++k) {
        std::int64_t p = P[1][k], s = A[k];
        if (s > 0) {
          std::int64_t need = p >= 0 ? -(p / s) : (-p + s - 1) / s;
          lo = std::max(lo, need);
        } else if (s < 0) {
          std::int64_t t = -s;
          std::int64_t cap = p >= 0 ? p / t : -((-p + t - 1) / t);
          hi = std::min(hi, cap);
        } else if (p < 0) {
          return;
        }
      }
    }
    for (std::int64_t v = lo; v <= hi && !stop; ++v) {
      double t = double(v) - ctr;
      double used = dd_[i] * t * t;
      if (used > r + slack) continue;
      ++nodes_;
      z[Index(i)] = v;
      y[i] = double(v) - c[i];
      if (i == 0) {
        if (!cb(z)) stop = true;
        continue;
      }
      const std::int64_t* Ai = &A[i * m];
      for (std::size_t k = 0; k < m; ++k) P[i][k] = P[i + 1][k] + v * Ai[k];
      double rest = std::max(0.0, r - used);
      if (feasible(i, rest)) level(i - 1, rest);
    }
    y[i] = 0.0;
  };
  level(n - 1, b);
}

void SliceEnumerator::visit_in_cone(const IntVector& t, Int norm_min, Int norm_max, const IntMatrix& walls,
                                    const IntVector& lower, const std::function<bool(const IntVector&)>& cb) const {
  IntVector low = lower.size() ? lower : IntVector(IntVector::Zero(walls.rows()));
  auto x0 = solve_integer(p_, t);
  if (!x0) return;
  const Index k = k_.rows();
  IntMatrix wg = walls * L_.gram();
  auto accept = [&](const IntVector& x) {
    Int nx = L_.norm(x);
    if (nx < norm_min || nx > norm_max) return true;
    for (Index j = 0; j < wg.rows(); ++j)
      if (wg.row(j).dot(x) < low[j]) return true;
    return cb(x);
  };
  if (k == 0) {
    accept(*x0);
    return;
  }
  IntVector a = *x0 * kg_.transpose();
  Int n0 = L_.norm(*x0);
  RatVector ar = convert_vec<Rational>(a);
  RatVector c = ar * qinv_;
  Rational bound = Rational(n0.get()) - Rational(norm_min.get()) + c.dot(ar);
  IntVector base = IntVector(*x0 * wg.transpose()) - low;
  IntMatrix coef = kg_ * walls.transpose();  // k x m
  ell_.enumerate_in_cone(c, bound, base, coef, [&](const IntVector& z) { return accept(IntVector(*x0 + z * k_)); });
}

}  // namespace k3
