#include "k3/lattice.hpp"

#include "k3/enumerate.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace k3 {

using Index = Eigen::Index;

Signature signature(const IntMatrix& gram) {
  const Index n = gram.rows();
  RatMatrix a = convert<Rational>(gram);
  Signature s;
  auto swap_both = [&](Index i, Index j) {
    if (i == j) return;
    a.row(i).swap(a.row(j));
    a.col(i).swap(a.col(j));
  };
  for (Index k = 0; k < n; ++k) {
    Index p = -1;
    for (Index i = k; i < n && p < 0; ++i)
      if (a(i, i) != 0) p = i;
    if (p < 0) {
      Index pi = -1, pj = -1;
      for (Index i = k; i < n && pi < 0; ++i)
        for (Index j = i + 1; j < n; ++j)
          if (a(i, j) != 0) {
            pi = i, pj = j;
            break;
          }
      if (pi < 0) {
        s.zero += int(n - k);
        break;
      }
      // e_i -> e_i + e_j gives a nonzero diagonal entry 2 a_ij
      a.row(pi) += a.row(pj);
      a.col(pi) += a.col(pj);
      p = pi;
    }
    swap_both(k, p);
    (a(k, k) > 0 ? s.positive : s.negative)++;
    for (Index i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Rational f = a(i, k) / a(k, k);
      a.row(i) -= f * a.row(k);
      a.col(i) -= f * a.col(k);
    }
  }
  return s;
}

Lattice::Lattice(IntMatrix gram, std::vector<std::string> labels) : gram_(std::move(gram)), labels_(std::move(labels)) {
  if (gram_.rows() != gram_.cols()) throw std::invalid_argument("Lattice: Gram matrix not square");
  if (gram_ != gram_.transpose()) throw std::invalid_argument("Lattice: Gram matrix not symmetric");
  if (!labels_.empty() && Index(labels_.size()) != gram_.rows()) throw std::invalid_argument("Lattice: label count");
}

Rational Lattice::pair(const RatVector& x, const RatVector& y) const {
  Rational s = 0;
  for (Index i = 0; i < rank(); ++i) {
    if (x[i] == 0) continue;
    Rational row = 0;
    for (Index j = 0; j < rank(); ++j)
      if (y[j] != 0) row += Rational(gram_(i, j).get()) * y[j];
    s += x[i] * row;
  }
  return s;
}

Integer Lattice::det() const { return determinant(gram_); }

const Signature& Lattice::signature() const {
  if (!sig_) sig_ = k3::signature(gram_);
  return *sig_;
}

bool Lattice::is_even() const {
  for (Index i = 0; i < rank(); ++i)
    if (gram_(i, i).get() % 2 != 0) return false;
  return true;
}

bool Lattice::is_hyperbolic() const {
  const auto& s = signature();
  return s.zero == 0 && s.positive == 1;
}

bool Lattice::is_negative_definite() const {
  const auto& s = signature();
  return s.zero == 0 && s.positive == 0;
}

const RatMatrix& Lattice::gram_inverse() const {
  if (!ginv_) ginv_ = inverse(gram_);
  return *ginv_;
}

RatVector Lattice::dual_from_pairings(const IntVector& p) const { return convert_vec<Rational>(p) * gram_inverse(); }

bool is_isometry(const Lattice& L, const IntMatrix& m) {
  return m.rows() == L.rank() && m.cols() == L.rank() && m * L.gram() * m.transpose() == L.gram();
}

IntMatrix reflection(const Lattice& L, const IntVector& r) {
  if (L.norm(r) != -2) throw std::invalid_argument("reflection: not a root");
  // x -> x + <x,r> r  ==  x * (I + G r^T r)
  IntMatrix m = IntMatrix::Identity(L.rank(), L.rank()) + (L.gram() * r.transpose()) * r;
  return m;
}

SubLattice sublattice(const Lattice& L, const IntMatrix& generators) {
  IntMatrix b = row_basis(generators);
  return {Lattice(IntMatrix(b * L.gram() * b.transpose())), b};
}

SubLattice orthogonal_complement(const Lattice& L, const IntMatrix& vectors) {
  IntMatrix k = kernel_basis(IntMatrix(L.gram() * vectors.transpose()));
  Lattice c(IntMatrix(k * L.gram() * k.transpose()));
  if (c.rank() > 0 && c.det() == 0) throw std::invalid_argument("orthogonal_complement: degenerate subspace");
  return {c, k};
}

Lattice direct_sum(const Lattice& a, const Lattice& b) {
  IntMatrix g = IntMatrix::Zero(a.rank() + b.rank(), a.rank() + b.rank());
  g.topLeftCorner(a.rank(), a.rank()) = a.gram();
  g.bottomRightCorner(b.rank(), b.rank()) = b.gram();
  return Lattice(g);
}

Lattice scaled(const Lattice& L, Int f) { return Lattice(IntMatrix(L.gram() * f)); }

// ---------------------------------------------------------------- forms

Rational mod_q(const Rational& x, const Integer& m) {
  Integer num = boost::multiprecision::numerator(x), den = boost::multiprecision::denominator(x);
  Integer period = m * den;
  Integer r = num % period;
  if (r < 0) r += period;
  return Rational(r, den);
}

DiscriminantForm::DiscriminantForm(const Lattice& L) : L_(L) {
  if (L.rank() == 0) return;
  if (L.det() == 0) throw std::invalid_argument("discriminant_form: degenerate lattice");
  SmithForm f = smith_normal_form(convert<Integer>(L.gram()));
  BigMatrix uinv = convert<Integer>(inverse(convert<Rational>(f.U)));
  std::vector<Index> keep;
  for (Index i = 0; i < L.rank(); ++i)
    if (f.D(i, i) != 1) keep.push_back(i);
  gens_.resize(Index(keep.size()), L.rank());
  coord_map_.resize(L.rank(), Index(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    Index i = keep[k];
    orders_.push_back(f.D(i, i));
    for (Index j = 0; j < L.rank(); ++j) gens_(Index(k), j) = Rational(f.U(i, j), f.D(i, i));
    coord_map_.col(Index(k)) = uinv.col(i) * f.D(i, i);
    size_ *= f.D(i, i).convert_to<std::size_t>();
  }
}

DiscriminantForm::Element DiscriminantForm::element_of(const RatVector& y) const {
  Element e(orders_.size());
  for (std::size_t k = 0; k < orders_.size(); ++k) {
    Rational t = 0;
    for (Index j = 0; j < y.size(); ++j)
      if (y[j] != 0) t += y[j] * Rational(coord_map_(j, Index(k)));
    if (boost::multiprecision::denominator(t) != 1) throw std::invalid_argument("element_of: vector not in the dual lattice");
    Integer v = boost::multiprecision::numerator(t) % orders_[k];
    if (v < 0) v += orders_[k];
    e[k] = v;
  }
  return e;
}

RatVector DiscriminantForm::lift(const Element& e) const {
  RatVector y = RatVector::Zero(L_.rank());
  for (std::size_t k = 0; k < orders_.size(); ++k)
    if (e[k] != 0) y += Rational(e[k]) * gens_.row(Index(k));
  return y;
}

std::size_t DiscriminantForm::index_of(const Element& e) const {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < orders_.size(); ++k) idx = idx * orders_[k].convert_to<std::size_t>() + e[k].convert_to<std::size_t>();
  return idx;
}

DiscriminantForm::Element DiscriminantForm::element_at(std::size_t idx) const {
  Element e(orders_.size());
  for (std::size_t k = orders_.size(); k-- > 0;) {
    std::size_t d = orders_[k].convert_to<std::size_t>();
    e[k] = Integer(idx % d);
    idx /= d;
  }
  return e;
}

Rational DiscriminantForm::q(const Element& e) const {
  RatVector y = lift(e);
  return mod_q(L_.norm(y), 2);
}

Rational DiscriminantForm::b(const Element& x, const Element& y) const { return mod_q(L_.pair(lift(x), lift(y)), 1); }

DiscriminantForm::Element DiscriminantForm::add(const Element& x, const Element& y) const {
  Element e(orders_.size());
  for (std::size_t k = 0; k < orders_.size(); ++k) e[k] = (x[k] + y[k]) % orders_[k];
  return e;
}

DiscriminantForm::Element DiscriminantForm::scale(const Element& x, const Integer& s) const {
  Element e(orders_.size());
  for (std::size_t k = 0; k < orders_.size(); ++k) {
    Integer v = (x[k] * s) % orders_[k];
    if (v < 0) v += orders_[k];
    e[k] = v;
  }
  return e;
}

std::string DiscriminantForm::describe() const {
  if (orders_.empty()) return "0";
  std::map<Integer, int> count;
  std::vector<Integer> seen;
  for (const auto& d : orders_) {
    if (!count[d]++) seen.push_back(d);
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (i) os << " + ";
    os << "(Z/" << seen[i] << ")";
    if (count[seen[i]] > 1) os << "^" << count[seen[i]];
  }
  return os.str();
}

FormPerm identity_perm(std::size_t n) {
  FormPerm p(n);
  std::iota(p.begin(), p.end(), std::size_t(0));
  return p;
}

FormPerm compose(const FormPerm& first, const FormPerm& then) {
  FormPerm p(first.size());
  for (std::size_t i = 0; i < first.size(); ++i) p[i] = then[first[i]];
  return p;
}

FormPerm inverse(const FormPerm& p) {
  FormPerm q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[p[i]] = i;
  return q;
}

std::vector<FormPerm> perm_closure(const std::vector<FormPerm>& gens, std::size_t n) {
  std::set<FormPerm> seen{identity_perm(n)};
  std::vector<FormPerm> out{identity_perm(n)};
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& g : gens) {
      FormPerm p = compose(out[i], g);
      if (seen.insert(p).second) out.push_back(p);
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FormPerm> orthogonal_group_of_form(const DiscriminantForm& q, std::size_t bound) {
  const std::size_t n = q.size();
  if (n > bound) throw std::length_error("orthogonal_group_of_form: discriminant group too large");
  const std::size_t k = q.orders().size();
  std::vector<DiscriminantForm::Element> elems(n);
  std::vector<Rational> qv(n);
  for (std::size_t i = 0; i < n; ++i) elems[i] = q.element_at(i), qv[i] = q.q(elems[i]);
  std::vector<FormPerm> out;
  if (k == 0) return {identity_perm(n)};
  // candidate images for generator j: elements with the right order-divisibility and q-value
  std::vector<std::vector<std::size_t>> cand(k);
  for (std::size_t j = 0; j < k; ++j) {
    DiscriminantForm::Element g(k, Integer(0));
    g[j] = 1;
    Rational qg = q.q(g);
    for (std::size_t i = 0; i < n; ++i) {
      bool killed = true;
      for (const auto& c : q.scale(elems[i], q.orders()[j]))
        if (c != 0) killed = false;
      if (killed && qv[i] == qg) cand[j].push_back(i);
    }
  }
  std::vector<std::size_t> choice(k);
  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    if (j == k) {
      FormPerm p(n);
      std::vector<char> hit(n, 0);
      for (std::size_t i = 0; i < n; ++i) {
        DiscriminantForm::Element img(k, Integer(0));
        for (std::size_t t = 0; t < k; ++t) img = q.add(img, q.scale(elems[choice[t]], elems[i][t]));
        std::size_t idx = q.index_of(img);
        if (hit[idx] || qv[idx] != qv[i]) return;
        hit[idx] = 1;
        p[i] = idx;
      }
      out.push_back(p);
      return;
    }
    for (std::size_t c : cand[j]) {
      choice[j] = c;
      rec(j + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

FormPerm induced_disc_action(const DiscriminantForm& q, const IntMatrix& m) {
  const std::size_t n = q.size();
  FormPerm p(n);
  RatMatrix mq = convert<Rational>(m);
  for (std::size_t i = 0; i < n; ++i) p[i] = q.index_of_dual(RatVector(q.lift(q.element_at(i)) * mq));
  return p;
}

Overlattice overlattice(const Lattice& L, const RatMatrix& extra) {
  const Index n = L.rank();
  Integer den = 1;
  for (Index i = 0; i < extra.rows(); ++i)
    for (Index j = 0; j < n; ++j) den = lcm(den, boost::multiprecision::denominator(extra(i, j)));
  BigMatrix gens(n + extra.rows(), n);
  gens.topRows(n) = BigMatrix::Identity(n, n) * den;
  for (Index i = 0; i < extra.rows(); ++i)
    for (Index j = 0; j < n; ++j) gens(n + i, j) = boost::multiprecision::numerator(extra(i, j) * den);
  HermiteForm h = hermite_normal_form(gens);
  RatMatrix basis(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) basis(i, j) = Rational(h.H(i, j), den);
  RatMatrix g = basis * convert<Rational>(L.gram()) * basis.transpose();
  IntMatrix gi(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      if (boost::multiprecision::denominator(g(i, j)) != 1) throw std::invalid_argument("overlattice: glue is not isotropic (non-integral pairing)");
      gi(i, j) = narrow_rational(g(i, j));
    }
  Lattice out(gi);
  if (L.is_even() && !out.is_even()) throw std::invalid_argument("overlattice: glue is not isotropic (odd vector)");
  Rational detb = Rational(determinant(BigMatrix(h.H.topRows(n)))) / Rational(boost::multiprecision::pow(den, unsigned(n)));
  Integer index = boost::multiprecision::numerator(1 / abs(detb));
  return {out, basis, index};
}

Overlattice glue_overlattice(const DiscriminantForm& q1, const DiscriminantForm& q2,
                             const std::vector<std::pair<DiscriminantForm::Element, DiscriminantForm::Element>>& glue) {
  Lattice sum = direct_sum(q1.lattice(), q2.lattice());
  const Index r1 = q1.lattice().rank();
  RatMatrix extra(Index(glue.size()), sum.rank());
  for (std::size_t i = 0; i < glue.size(); ++i) {
    extra.row(Index(i)).head(r1) = q1.lift(glue[i].first);
    extra.row(Index(i)).tail(sum.rank() - r1) = q2.lift(glue[i].second);
  }
  return overlattice(sum, extra);
}

// ---------------------------------------------------------------- roots

AdeType ade_type_of_simple_roots(const IntMatrix& g) {
  const Index n = g.rows();
  std::vector<std::vector<Index>> adj(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    if (g(i, i) != -2 && g(i, i) != 2) throw std::invalid_argument("ade_type: not a root");
    for (Index j = 0; j < n; ++j)
      if (i != j && g(i, j) != 0) {
        if (abs(g(i, j)) != 1) throw std::invalid_argument("ade_type: not a simply-laced Dynkin diagram");
        adj[std::size_t(i)].push_back(j);
      }
  }
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  AdeType out;
  for (Index s = 0; s < n; ++s) {
    if (seen[std::size_t(s)]) continue;
    std::vector<Index> comp{s};
    seen[std::size_t(s)] = 1;
    for (std::size_t k = 0; k < comp.size(); ++k)
      for (Index t : adj[std::size_t(comp[k])])
        if (!seen[std::size_t(t)]) seen[std::size_t(t)] = 1, comp.push_back(t);
    std::size_t edges = 0;
    Index branch = -1;
    int branches = 0;
    for (Index v : comp) {
      edges += adj[std::size_t(v)].size();
      if (adj[std::size_t(v)].size() > 2) branch = v, ++branches;
      if (adj[std::size_t(v)].size() > 3) throw std::invalid_argument("ade_type: vertex of degree > 3");
    }
    edges /= 2;
    const int m = int(comp.size());
    if (edges != comp.size() - 1 || branches > 1) throw std::invalid_argument("ade_type: not a Dynkin diagram");
    if (branches == 0) {
      out.push_back({'A', m});
      continue;
    }
    std::vector<int> arms;
    for (Index start : adj[std::size_t(branch)]) {
      int len = 1;
      Index prev = branch, cur = start;
      while (adj[std::size_t(cur)].size() == 2) {
        Index nxt = adj[std::size_t(cur)][0] == prev ? adj[std::size_t(cur)][1] : adj[std::size_t(cur)][0];
        prev = cur, cur = nxt, ++len;
      }
      arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] == 1 && arms[1] == 1) out.push_back({'D', m});
    else if (arms[0] == 1 && arms[1] == 2 && arms[2] <= 4) out.push_back({'E', m});
    else throw std::invalid_argument("ade_type: not a Dynkin diagram");
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string ade_string(const AdeType& t) {
  if (t.empty()) return "0";
  std::ostringstream os;
  std::size_t i = 0;
  bool first = true;
  while (i < t.size()) {
    std::size_t j = i;
    while (j < t.size() && t[j] == t[i]) ++j;
    if (!first) os << "+";
    first = false;
    if (j - i > 1) os << (j - i);
    os << t[i].first << t[i].second;
    i = j;
  }
  return os.str();
}

std::vector<IntVector> simple_roots(const Lattice& L, const std::vector<IntVector>& roots, const RatVector& f) {
  std::vector<IntVector> pos;
  for (const auto& r : roots) {
    Rational s = L.pair(convert_vec<Rational>(r), f);
    if (s == 0) throw std::invalid_argument("simple_roots: functional orthogonal to a root");
    pos.push_back(s > 0 ? r : IntVector(-r));
  }
  std::sort(pos.begin(), pos.end(), VecLess());
  pos.erase(std::unique(pos.begin(), pos.end(), VecEq()), pos.end());
  std::unordered_set<IntVector, VecHash, VecEq> set(pos.begin(), pos.end());
  std::vector<IntVector> simple;
  for (const auto& r : pos) {
    bool decomposable = false;
    for (const auto& s : pos)
      if (!(s == r) && set.count(IntVector(r - s))) {
        decomposable = true;
        break;
      }
    if (!decomposable) simple.push_back(r);
  }
  return simple;
}

std::vector<IntMatrix> definite_isometries(const Lattice& L, std::size_t limit) {
  const Index n = L.rank();
  Lattice work = L;
  bool negative = L.is_negative_definite();
  if (!negative && !(L.signature().positive == n)) throw std::invalid_argument("definite_isometries: lattice not definite");
  // candidates: all vectors with the norm of each basis vector
  std::map<std::int64_t, std::vector<IntVector>> by_norm;
  for (Index i = 0; i < n; ++i) {
    std::int64_t nn = L.gram()(i, i).get();
    if (by_norm.count(nn)) continue;
    Lattice neg = negative ? L : scaled(L, -1);
    auto vs = short_vectors(neg, Int(negative ? nn : -nn), true);
    std::vector<IntVector> exact;
    for (auto& v : vs)
      if (L.norm(v) == nn) exact.push_back(v);
    by_norm[nn] = exact;
  }
  std::vector<IntMatrix> out;
  IntMatrix m(n, n);
  std::function<void(Index)> rec = [&](Index i) {
    if (out.size() >= limit) throw std::length_error("definite_isometries: limit exceeded");
    if (i == n) {
      if (abs(determinant(m)) == 1) out.push_back(m);
      return;
    }
    for (const auto& v : by_norm[L.gram()(i, i).get()]) {
      bool ok = true;
      for (Index j = 0; j < i && ok; ++j)
        if (L.pair(v, IntVector(m.row(j))) != L.gram()(i, j)) ok = false;
      if (!ok) continue;
      m.row(i) = v;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

}  // namespace k3
