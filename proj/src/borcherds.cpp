#include "k3/borcherds.hpp"

#include "k3/enumerate.hpp"
#include "k3/fermat.hpp"

#include "json.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_set>
#include <stdexcept>

namespace k3 {

using Index = Eigen::Index;

namespace {

std::optional<Rational> rational_sqrt(const Rational& x) {
  if (x < 0) return std::nullopt;
  Integer n = boost::multiprecision::numerator(x), d = boost::multiprecision::denominator(x);
  Integer sn = boost::multiprecision::sqrt(n), sd = boost::multiprecision::sqrt(d);
  if (sn * sn != n || sd * sd != d) return std::nullopt;
  return Rational(sn, sd);
}

Rational dot(const IntVector& p, const RatVector& x) {
  Rational s = 0;
  for (Index i = 0; i < p.size(); ++i)
    if (p[i] != 0) s += x[i] * p[i].get();
  return s;
}

// {s > lo : a_j + s b_j > 0 for all j}, returned as a point inside, if any
std::optional<Rational> open_interval_point(const std::vector<Rational>& a, const std::vector<Rational>& b,
                                            const Rational& lo) {
  Rational low = lo;
  std::optional<Rational> high;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (b[j] == 0) {
      if (a[j] <= 0) return std::nullopt;
    } else if (b[j] > 0) {
      Rational z = -a[j] / b[j];
      if (z > low) low = z;
    } else {
      Rational z = a[j] / -b[j];
      if (!high || z < *high) high = z;
    }
  }
  if (!high) return low + 1;
  if (*high <= low) return std::nullopt;
  return (low + *high) / 2;
}

// point x0 + s (x1 - x0) strictly inside all candidate half-spaces, s > lo
RatVector point_on_segment(const std::vector<IntVector>& cands, const RatVector& x0, const RatVector& x1,
                           const Rational& lo) {
  RatVector d = x1 - x0;
  std::vector<Rational> a, b;
  for (auto& p : cands) a.push_back(dot(p, x0)), b.push_back(dot(p, d));
  auto s = open_interval_point(a, b, lo);
  if (!s) throw std::runtime_error("no interior point on the segment (codimension-two crossing); perturb the target");
  return x0 + d * *s;
}

struct MatHash {
  std::size_t operator()(const IntMatrix& m) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (Index i = 0; i < m.size(); ++i) h = (h ^ std::size_t(m.data()[i].get())) * 0x100000001b3ull + (h >> 29);
    return h;
  }
};
struct MatEq {
  bool operator()(const IntMatrix& a, const IntMatrix& b) const noexcept { return a == b; }
};

}  // namespace

// ---------------------------------------------------------------- Embedding

Embedding::Embedding(const Lattice& S, const IntMatrix& emb) : S_(S), emb_(emb) {
  const Lattice& L = ambient();
  if (emb.cols() != L.rank() || emb.rows() != S.rank()) throw std::invalid_argument("Embedding: wrong shape");
  if (IntMatrix(emb * L.gram() * emb.transpose()) != S.gram()) throw std::invalid_argument("Embedding: Gram not preserved");
  if (!is_primitive(emb)) throw std::invalid_argument("Embedding: not primitive");
  sg_ = L.gram() * emb.transpose();
  SubLattice r = orthogonal_complement(L, emb);
  R_ = r.lattice;
  r_basis_ = r.basis;
  rg_ = L.gram() * r_basis_.transpose();
  if (!R_.is_negative_definite()) throw std::invalid_argument("Embedding: complement not negative definite");
  g_ = S.gram();
  det_ = abs(narrow(S.det()));
  RatMatrix inv = S.gram_inverse() * Rational(det_.get());
  adj_ = convert<Int>(inv);
  r_inv_ = R_.gram_inverse();
  IntMatrix m(L.rank(), L.rank());
  m << sg_, rg_;
  lift_inv_ = inverse(m);

  // R^dual elements of norm > -2
  const Index k = R_.rank();
  Int dr = abs(narrow(R_.det()));
  IntMatrix q = convert<Int>(RatMatrix(-r_inv_ * Rational(dr.get())));
  Ellipsoid ell(q);
  ell.enumerate(RatVector::Zero(k), Rational(2 * dr.get()), [&](const IntVector& z) {
    if ((z * q).dot(z) < 2 * dr) r_shell_.push_back(z);
    return true;
  });
  std::sort(r_shell_.begin(), r_shell_.end(), VecLess());
}

RatVector Embedding::dual_vector(const IntVector& p) const {
  return convert_vec<Rational>(IntVector(p * adj_)) / Rational(det_.get());
}
Rational Embedding::dual_norm(const IntVector& p) const { return dual_pair(p, p); }
Rational Embedding::dual_pair(const IntVector& p, const IntVector& q) const {
  return Rational((p * adj_).dot(q).get(), det_.get());
}
Rational Embedding::r_dual_norm(const IntVector& q) const {
  RatVector x = convert_vec<Rational>(q);
  return (x * r_inv_).dot(x);
}

std::optional<IntVector> Embedding::lift(const IntVector& s_pair, const IntVector& r_pair) const {
  IntVector t(s_pair.size() + r_pair.size());
  t << s_pair, r_pair;
  RatVector x = convert_vec<Rational>(t) * lift_inv_;
  IntVector out(x.size());
  for (Index i = 0; i < x.size(); ++i) {
    if (boost::multiprecision::denominator(x[i]) != 1) return std::nullopt;
    out[i] = narrow_rational(x[i]);
  }
  return out;
}

IntVector Embedding::act_dual(const IntMatrix& M, const IntVector& p) const {
  IntVector y = p * adj_ * M * g_;
  for (Index i = 0; i < y.size(); ++i) {
    if (y[i] % det_ != 0) throw std::logic_error("act_dual: not an isometry of S");
    y[i] = y[i] / det_;
  }
  return y;
}

// ---------------------------------------------------------------- chambers

int Chamber::find(const IntVector& v) const {
  if (index_.size() != walls.size()) {
    index_.clear();
    for (std::size_t i = 0; i < walls.size(); ++i) index_.emplace(walls[i].v, int(i));
  }
  auto it = index_.find(v);
  return it == index_.end() ? -1 : it->second;
}
void Chamber::reindex() { index_.clear(); }
std::vector<int> Chamber::outer() const {
  std::vector<int> o;
  for (std::size_t i = 0; i < walls.size(); ++i)
    if (walls[i].outer) o.push_back(int(i));
  return o;
}
std::vector<int> Chamber::inner() const {
  std::vector<int> o;
  for (std::size_t i = 0; i < walls.size(); ++i)
    if (!walls[i].outer) o.push_back(int(i));
  return o;
}

std::vector<IntVector> wall_candidates(const Embedding& e, const IntVector& weyl) {
  const Lattice& L = e.ambient();
  RatVector ws = e.project_s(weyl);
  if (e.S().norm(ws) <= 0) throw std::invalid_argument("wall_candidates: projection of the Weyl vector is not positive");
  IntMatrix cons(e.r_basis().rows() + 1, L.rank());
  cons << e.r_basis(), weyl;
  SliceEnumerator slice(L, cons);
  std::set<IntVector, VecLess> out;
  for (auto& q : e.r_shell()) {
    IntVector t(q.size() + 1);
    t << q, Int(1);
    slice.visit(t, -2, -2, [&](const IntVector& r) {
      IntVector p = e.s_pairings(r);
      if (e.dual_norm(p) < 0) out.insert(primitive_part(p));
      return true;
    });
  }
  return {out.begin(), out.end()};
}

namespace {

Chamber chamber_from_candidates(const Embedding& e, const IntVector& weyl, const std::vector<IntVector>& cands,
                                const RatVector& interior, const std::vector<IntMatrix>& symmetry) {
  const std::size_t N = cands.size();
  const Index n = e.S().rank();
  IntVector X = clear_denominators(interior);
  std::vector<Int> a(N);
  for (std::size_t j = 0; j < N; ++j) {
    a[j] = cands[j].dot(X);
    if (a[j] <= 0) throw std::invalid_argument("chamber: interior point is not strictly inside");
  }
  std::vector<IntVector> u(N);
  for (std::size_t j = 0; j < N; ++j) u[j] = e.scaled_dual(cands[j]);

  std::unordered_map<IntVector, std::size_t, VecHash, VecEq> pos;
  for (std::size_t j = 0; j < N; ++j) pos.emplace(cands[j], j);

  // orbits of the candidates under the symmetry; an orbit leaving the
  // candidate set cannot consist of walls
  std::vector<int> orbit_of(N, -1);
  std::vector<std::size_t> parent(N), via(N);
  std::vector<std::vector<std::size_t>> orbits;
  std::vector<bool> orbit_ok;
  for (std::size_t s = 0; s < N; ++s) {
    if (orbit_of[s] >= 0) continue;
    int id = int(orbits.size());
    orbits.push_back({s});
    orbit_ok.push_back(true);
    orbit_of[s] = id;
    parent[s] = s;
    for (std::size_t h = 0; h < orbits.back().size(); ++h) {
      std::size_t x = orbits.back()[h];
      for (std::size_t g = 0; g < symmetry.size(); ++g) {
        IntVector y = e.act_dual(symmetry[g], cands[x]);
        auto it = pos.find(y);
        if (it == pos.end()) {
          orbit_ok.back() = false;
          continue;
        }
        std::size_t yi = it->second;
        if (orbit_of[yi] < 0) {
          orbit_of[yi] = id;
          parent[yi] = x;
          via[yi] = g;
          orbits.back().push_back(yi);
        }
      }
    }
  }

  Chamber c;
  c.weyl = weyl;
  c.interior = interior;
  c.candidates = N;
  RatVector Xr = convert_vec<Rational>(X);
  std::vector<std::optional<RatVector>> witness(N);
  for (std::size_t o = 0; o < orbits.size(); ++o) {
    if (!orbit_ok[o]) continue;
    std::size_t k = orbits[o][0];
    // move from X along v_k: f_j(T) = a_j + T <u_j, p_k>
    Int bk = u[k].dot(cands[k]);
    Rational T0(a[k].get(), (-bk).get());
    std::optional<Rational> Tmax;
    for (std::size_t j = 0; j < N; ++j) {
      if (j == k) continue;
      Int bj = u[j].dot(cands[k]);
      if (bj < 0) {
        Rational z(a[j].get(), (-bj).get());
        if (!Tmax || z < *Tmax) Tmax = z;
      }
    }
    if (!Tmax || T0 < *Tmax) {
      Rational T = Tmax ? (T0 + *Tmax) / 2 : T0 * 2;
      witness[k] = Xr + convert_vec<Rational>(u[k]) * T;
    } else {
      IntMatrix others(Index(N - 1), n);
      for (std::size_t j = 0, r = 0; j < N; ++j)
        if (j != k) others.row(Index(r++)) = cands[j];
      ConeTest t = cone_membership(others, cands[k]);
      ++c.lp_calls;
      if (t.member) continue;
      witness[k] = t.separator;
    }
    for (std::size_t h = 1; h < orbits[o].size(); ++h) {
      std::size_t x = orbits[o][h];
      witness[x] = *witness[parent[x]] * convert<Rational>(symmetry[via[x]]);
    }
  }

  for (std::size_t j = 0; j < N; ++j) {
    if (!witness[j]) continue;
    Wall w;
    w.v = cands[j];
    w.norm = e.dual_norm(cands[j]);
    w.witness = *witness[j];
    IntVector dir = primitive_part(u[j]);
    if (e.S().norm(dir) == -2) {
      w.outer = true;
      w.root = dir;
    }
    c.walls.push_back(std::move(w));
  }
  std::stable_sort(c.walls.begin(), c.walls.end(), [](const Wall& x, const Wall& y) {
    if (x.outer != y.outer) return x.outer;
    return VecLess()(x.v, y.v);
  });
  c.reindex();
  return c;
}

}  // namespace

Chamber chamber_walls(const Embedding& e, const IntVector& weyl, const ChamberOptions& opt) {
  auto cands = wall_candidates(e, weyl);
  RatVector x = opt.interior ? *opt.interior : e.project_s(weyl);
  return chamber_from_candidates(e, weyl, cands, x, opt.symmetry);
}

IntVector adjacent_weyl(const Embedding& e, const Chamber& c, int k) {
  const Wall& wall = c.walls.at(std::size_t(k));
  const Lattice& L = e.ambient();
  // the roots of L26 whose S-part is a positive multiple of v
  std::vector<IntVector> phi;
  for (auto& q : e.r_shell()) {
    auto t = rational_sqrt((Rational(-2) - e.r_dual_norm(q)) / wall.norm);
    if (!t || *t == 0) continue;
    IntVector sp(wall.v.size());
    bool integral = true;
    for (Index i = 0; i < sp.size() && integral; ++i) {
      Rational x = *t * wall.v[i].get();
      if (boost::multiprecision::denominator(x) != 1) integral = false;
      else sp[i] = narrow_rational(x);
    }
    if (!integral) continue;
    auto r = e.lift(sp, q);
    if (!r) continue;
    if (L.norm(*r) != -2) throw std::logic_error("adjacent_weyl: lifted vector is not a root");
    phi.push_back(*r);
  }
  if (phi.empty()) throw std::invalid_argument("adjacent_weyl: no root of L26 over this wall");
  std::sort(phi.begin(), phi.end(), VecLess());
  IntVector w = c.weyl;
  for (std::size_t steps = 0;; ++steps) {
    if (steps > 100000) throw std::logic_error("adjacent_weyl: reflection loop does not terminate");
    bool moved = false;
    for (auto& r : phi)
      if (L.pair(w, r) == 1) {
        w += r;
        moved = true;
        break;
      }
    if (!moved) break;
  }
  for (auto& r : phi)
    if (L.pair(w, r) >= 0) throw std::logic_error("adjacent_weyl: did not reach the far side");
  return w;
}

Chamber adjacent_chamber(const Embedding& e, const Chamber& c, int k, const ChamberOptions& opt) {
  const Wall& wall = c.walls.at(std::size_t(k));
  IntVector w = adjacent_weyl(e, c, k);
  auto cands = wall_candidates(e, w);
  RatVector x;
  if (opt.interior) {
    x = *opt.interior;
  } else {
    // cross at the point where [interior, witness] meets the wall
    Rational a0 = dot(wall.v, c.interior), a1 = dot(wall.v, wall.witness);
    Rational s = a0 / (a0 - a1);
    RatVector cross = c.interior + (wall.witness - c.interior) * s;
    if (e.S().norm(cross) <= 0) throw std::runtime_error("adjacent_chamber: crossing point outside the positive cone");
    x = point_on_segment(cands, c.interior, wall.witness, s);
  }
  Chamber out = chamber_from_candidates(e, w, cands, x, opt.symmetry);
  if (out.find(IntVector(-wall.v)) < 0) throw std::logic_error("adjacent_chamber: shared wall missing");
  return out;
}

Walk walk_to(const Embedding& e, const Chamber& start, const RatVector& target) {
  if (e.S().norm(target) <= 0) throw std::invalid_argument("walk_to: target not in the positive cone");
  Walk out{start, {}};
  const RatVector x0 = start.interior;
  const RatVector d = target - x0;
  Rational cur = 0;
  for (;;) {
    const Chamber& c = out.chamber;
    // the wall through which the segment leaves c first
    std::optional<Rational> best;
    std::vector<int> hit;
    for (std::size_t j = 0; j < c.walls.size(); ++j) {
      Rational a = dot(c.walls[j].v, x0), b = dot(c.walls[j].v, d);
      if (b >= 0) continue;
      Rational s = a / -b;
      if (s < cur) continue;
      if (!best || s < *best) best = s, hit = {int(j)};
      else if (s == *best) hit.push_back(int(j));
    }
    if (!best || *best > 1) return out;
    if (*best == 1) throw std::runtime_error("walk_to: target lies on a wall; perturb it");
    if (hit.size() > 1) throw std::runtime_error("walk_to: segment meets a face of codimension two; perturb the target");
    int k = hit[0];
    IntVector v = c.walls[std::size_t(k)].v;
    IntVector w = adjacent_weyl(e, c, k);
    auto cands = wall_candidates(e, w);
    RatVector x = point_on_segment(cands, x0, target, *best);
    Chamber next = chamber_from_candidates(e, w, cands, x, {});
    if (next.find(IntVector(-v)) < 0) throw std::logic_error("walk_to: shared wall missing");
    out.crossed.push_back(v);
    out.chamber = std::move(next);
    cur = *best;
  }
}

// ---------------------------------------------------------------- isometries

WeightedGraph outer_graph(const Lattice& S, const Chamber& c) {
  auto o = c.outer();
  WeightedGraph g(int(o.size()));
  for (std::size_t i = 0; i < o.size(); ++i)
    for (std::size_t j = i + 1; j < o.size(); ++j) {
      Int m = S.pair(c.walls[std::size_t(o[i])].root, c.walls[std::size_t(o[j])].root);
      if (m < 0) throw std::logic_error("outer_graph: negative pairing between outer roots");
      if (m > 0) g.set(int(i), int(j), int(m.get()));
    }
  return g;
}

std::optional<IntMatrix> isometry_from_outer_map(const Lattice& S, const Chamber& c1, const Chamber& c2,
                                                 const std::vector<int>& map) {
  auto o1 = c1.outer(), o2 = c2.outer();
  const Index n = S.rank();
  // greedy basis among the outer roots of c1
  std::vector<std::size_t> pick;
  IntMatrix b(0, n);
  for (std::size_t i = 0; i < o1.size() && Index(pick.size()) < n; ++i) {
    IntMatrix t(b.rows() + 1, n);
    t << b, c1.walls[std::size_t(o1[i])].root;
    if (rank(t) == t.rows()) b = t, pick.push_back(i);
  }
  if (Index(pick.size()) < n) throw std::invalid_argument("isometry_from_outer_map: outer roots do not span S");
  IntMatrix img(n, n);
  for (Index i = 0; i < n; ++i) img.row(i) = c2.walls[std::size_t(o2[std::size_t(map[pick[std::size_t(i)]])])].root;
  RatMatrix m = inverse(b) * convert<Rational>(img);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (boost::multiprecision::denominator(m(i, j)) != 1) return std::nullopt;
  IntMatrix M = convert<Int>(m);
  if (!is_isometry(S, M)) return std::nullopt;
  for (std::size_t i = 0; i < o1.size(); ++i)
    if (IntVector(c1.walls[std::size_t(o1[i])].root * M) != c2.walls[std::size_t(o2[std::size_t(map[i])])].root)
      return std::nullopt;
  return M;
}

bool maps_chamber(const Embedding& e, const IntMatrix& g, const Chamber& c1, const Chamber& c2) {
  if (c1.walls.size() != c2.walls.size()) return false;
  for (auto& w : c1.walls)
    if (c2.find(e.act_dual(g, w.v)) < 0) return false;
  return true;
}

ChamberGroup chamber_aut(const Embedding& e, const Chamber& c) {
  WeightedGraph g = outer_graph(e.S(), c);
  auto ga = automorphism_group(g);
  ChamberGroup out;
  std::vector<Perm> gens;
  for (auto& p : ga.group.generators()) {
    auto M = isometry_from_outer_map(e.S(), c, c, p);
    if (!M) throw std::runtime_error("chamber_aut: outer-graph automorphism is not an isometry");
    if (!maps_chamber(e, *M, c, c)) throw std::runtime_error("chamber_aut: outer-graph automorphism moves the chamber");
    out.generators.push_back(*M);
    gens.push_back(p);
  }
  out.on_outer = PermGroup(g.size(), gens);
  return out;
}

std::optional<IntMatrix> chamber_transport(const Embedding& e, const Chamber& c1, const Chamber& c2,
                                           const std::function<bool(const IntMatrix&)>& accept,
                                           const std::vector<IntMatrix>& aut1, std::size_t cap) {
  if (c1.walls.size() != c2.walls.size() || c1.outer().size() != c2.outer().size()) return std::nullopt;
  WeightedGraph g1 = outer_graph(e.S(), c1), g2 = outer_graph(e.S(), c2);
  std::optional<IntMatrix> t0;
  auto iso = find_isomorphism(g1, g2);
  if (!iso) return std::nullopt;
  t0 = isometry_from_outer_map(e.S(), c1, c2, iso->vertex_map);
  if (!t0 || !maps_chamber(e, *t0, c1, c2)) {
    // the outer graph alone did not pin the chamber; try all graph isomorphisms
    t0.reset();
    for (auto& m : isomorphisms(g1, g2, {}, {}, cap)) {
      auto t = isometry_from_outer_map(e.S(), c1, c2, m.vertex_map);
      if (t && maps_chamber(e, *t, c1, c2)) {
        t0 = t;
        break;
      }
    }
    if (!t0) return std::nullopt;
  }
  if (!accept || accept(*t0)) return t0;
  std::vector<IntMatrix> gens = aut1.empty() ? chamber_aut(e, c1).generators : aut1;
  // breadth-first over Aut(c1), applying a before t0
  std::unordered_set<IntMatrix, MatHash, MatEq> seen;
  std::deque<IntMatrix> queue;
  IntMatrix id = IntMatrix::Identity(e.S().rank(), e.S().rank());
  queue.push_back(id);
  seen.insert(id);
  while (!queue.empty() && seen.size() <= cap) {
    IntMatrix a = queue.front();
    queue.pop_front();
    IntMatrix t = a * *t0;
    if (accept(t)) return t;
    for (auto& g : gens) {
      IntMatrix b = a * g;
      if (seen.insert(b).second) queue.push_back(b);
    }
  }
  return std::nullopt;
}

Chamber transform_chamber(const Embedding& e, const Chamber& c, const IntMatrix& g, const IntVector& new_weyl) {
  Chamber out;
  out.weyl = new_weyl;
  out.interior = c.interior * convert<Rational>(g);
  out.candidates = c.candidates;
  RatMatrix gr = convert<Rational>(g);
  for (auto& w : c.walls) {
    Wall x;
    x.v = e.act_dual(g, w.v);
    x.norm = w.norm;
    x.outer = w.outer;
    if (w.outer) x.root = w.root * g;
    x.witness = w.witness * gr;
    out.walls.push_back(std::move(x));
  }
  std::stable_sort(out.walls.begin(), out.walls.end(), [](const Wall& x, const Wall& y) {
    if (x.outer != y.outer) return x.outer;
    return VecLess()(x.v, y.v);
  });
  out.reindex();
  return out;
}

std::optional<Transport> transport_to_weyl(const Embedding& e, const Chamber& c1, const IntVector& w2,
                                           const std::function<bool(const IntMatrix&)>& accept,
                                           const std::vector<IntMatrix>& aut1, const PermGroup* aut1_outer,
                                           std::size_t cap) {
  auto cands = wall_candidates(e, w2);
  std::unordered_set<IntVector, VecHash, VecEq> cset(cands.begin(), cands.end());
  Chamber roots;  // only outer walls, as far as the graph matching is concerned
  for (auto& p : cands) {
    IntVector dir = primitive_part(e.scaled_dual(p));
    if (e.S().norm(dir) != -2) continue;
    Wall w;
    w.v = p;
    w.outer = true;
    w.root = dir;
    roots.walls.push_back(std::move(w));
  }
  if (roots.walls.size() != c1.outer().size()) return std::nullopt;
  WeightedGraph g1 = outer_graph(e.S(), c1), g2 = outer_graph(e.S(), roots);
  auto iso = find_isomorphism(g2, g1, {}, {}, aut1_outer);
  if (!iso) return std::nullopt;
  std::vector<int> map(g1.size());
  for (int i = 0; i < g2.size(); ++i) map[std::size_t((*iso)(i))] = i;
  auto t0 = isometry_from_outer_map(e.S(), c1, roots, map);
  if (!t0) return std::nullopt;
  for (auto& w : c1.walls)
    if (!cset.count(e.act_dual(*t0, w.v))) return std::nullopt;
  auto finish = [&](const IntMatrix& t) {
    Transport out{t, transform_chamber(e, c1, t, w2)};
    out.image.candidates = cands.size();
    return out;
  };
  if (!accept || accept(*t0)) return finish(*t0);
  std::vector<IntMatrix> gens = aut1.empty() ? chamber_aut(e, c1).generators : aut1;
  std::unordered_set<IntMatrix, MatHash, MatEq> seen;
  std::deque<IntMatrix> queue;
  IntMatrix id = IntMatrix::Identity(e.S().rank(), e.S().rank());
  queue.push_back(id);
  seen.insert(id);
  while (!queue.empty() && seen.size() <= cap) {
    IntMatrix a = queue.front();
    queue.pop_front();
    IntMatrix t = a * *t0;
    if (accept(t)) return finish(t);
    for (auto& g : gens) {
      IntMatrix b = a * g;
      if (seen.insert(b).second) queue.push_back(b);
    }
  }
  return std::nullopt;
}

std::vector<std::vector<int>> orbit_walls(const Embedding& e, const std::vector<IntMatrix>& gens, const Chamber& c,
                                          const std::vector<int>& subset) {
  std::vector<int> orbit_of(c.walls.size(), -1);
  std::vector<std::vector<int>> out;
  for (int s : subset) {
    if (orbit_of[std::size_t(s)] >= 0) continue;
    int id = int(out.size());
    out.push_back({s});
    orbit_of[std::size_t(s)] = id;
    for (std::size_t h = 0; h < out.back().size(); ++h) {
      int x = out.back()[h];
      for (auto& g : gens) {
        int y = c.find(e.act_dual(g, c.walls[std::size_t(x)].v));
        if (y < 0) throw std::invalid_argument("orbit_walls: isometry does not preserve the chamber");
        if (orbit_of[std::size_t(y)] < 0) {
          orbit_of[std::size_t(y)] = id;
          out.back().push_back(y);
        }
      }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

// ---------------------------------------------------------------- embeddings

const Ns3Embedding& embed_ns3() {
  static const Ns3Embedding result = [] {
    const L26Model& m = l26_with_weyl();
    const Lattice& L = m.lattice;
    Lattice lam(IntMatrix(L.gram().topLeftCorner(24, 24)));
    // a minimal vector from an LLL basis
    IntMatrix t = lll_transform(IntMatrix(-lam.gram()));
    IntVector l3;
    for (Index i = 0; i < t.rows(); ++i)
      if (lam.norm(IntVector(t.row(i))) == -4) {
        l3 = t.row(i);
        break;
      }
    if (l3.size() == 0) throw std::logic_error("embed_ns3: no minimal vector in the reduced basis");
    // the first partner and the first completions in enumeration order
    // (deterministic); the whole shells are far larger than needed
    SliceEnumerator s1(lam, IntMatrix(l3));
    IntVector t1(1);
    t1[0] = -1;
    IntVector l4;
    s1.visit(t1, -4, -4, [&](const IntVector& x) {
      l4 = x;
      return false;
    });
    if (l4.size() == 0) throw std::logic_error("embed_ns3: no partner vector");
    IntMatrix c2(2, 24);
    c2 << l3, l4;
    SliceEnumerator s2(lam, c2);
    IntVector t2(2);
    t2 << Int(1), Int(-2);

    const NS3& ns = ns3();
    const auto& target = dual_graph_112();
    const Pgu4& pg = pgu4();
    Ns3Embedding out;
    bool found = false;
    s2.visit(t2, -4, -4, [&](const IntVector& mu) {
      ++out.config.tried;
      IntVector l2 = l3 + mu;
      std::vector<IntVector> lambdas = {IntVector::Zero(24), l2, l3, l4};
      IntMatrix roots(4, 26);
      for (int i = 0; i < 4; ++i) roots.row(i) = m.leech_root(lambdas[std::size_t(i)]);
      IntMatrix gr = roots * L.gram() * roots.transpose();
      IntMatrix a2(4, 4);
      a2 << -2, 1, 0, 0, 1, -2, 0, 0, 0, 0, -2, 1, 0, 0, 1, -2;
      if (gr != a2 || !is_primitive(roots)) return true;
      SubLattice sp = orthogonal_complement(L, roots);
      RatVector h = sp.lattice.dual_from_pairings(IntVector(m.weyl * L.gram() * sp.basis.transpose()));
      for (Index i = 0; i < h.size(); ++i)
        if (boost::multiprecision::denominator(h[i]) != 1) return true;
      IntVector hi = convert_vec<Int>(h);
      auto rts = constrained_vectors(sp.lattice, hi, -2, 1);
      if (rts.size() != 112) return true;
      WeightedGraph g(112);
      for (int i = 0; i < 112; ++i)
        for (int j = i + 1; j < 112; ++j) {
          Int x = sp.lattice.pair(rts[std::size_t(i)], rts[std::size_t(j)]);
          if (x < 0 || x > 1) return true;
          if (x == 1) g.set(i, j, 1);
        }
      auto iso = find_isomorphism(g, target, {}, {}, &pg.group);
      if (!iso) return true;
      out.line_to_root.assign(112, -1);
      for (int i = 0; i < 112; ++i) out.line_to_root[std::size_t((*iso)(i))] = i;
      IntMatrix emb(22, 26);
      for (int k = 0; k < 22; ++k) {
        int line = ns.basis_lines[std::size_t(k)];
        emb.row(k) = rts[std::size_t(out.line_to_root[std::size_t(line)])] * sp.basis;
      }
      out.e = Embedding(ns.lattice, emb);
      for (int l = 0; l < 112; ++l)
        if (IntVector(ns.line_class(l) * emb) != IntVector(rts[std::size_t(out.line_to_root[std::size_t(l)])] * sp.basis))
          throw std::logic_error("embed_ns3: line classes and roots disagree");
      out.config.lambdas = lambdas;
      out.config.roots = roots;
      found = true;
      return false;
    });
    if (found) return out;
    throw std::runtime_error("embed_ns3: no 2A2 configuration of Leech roots reproduces the 112 lines");
  }();
  return result;
}

const Embedding& embed_ns0() {
  static const Embedding e = [] {
    const L40Data& d = l40();
    return Embedding(d.s0, IntMatrix(d.rho * embed_ns3().e.emb()));
  }();
  return e;
}

std::string chamber_to_json(const Embedding&, const Chamber& c, const IntVector& h) {
  nlohmann::json j;
  j["weyl"] = nlohmann::json::array();
  for (Index i = 0; i < c.weyl.size(); ++i) j["weyl"].push_back(c.weyl[i].get());
  j["walls"] = nlohmann::json::array();
  for (auto& w : c.walls) {
    nlohmann::json x;
    x["v"] = nlohmann::json::array();
    for (Index i = 0; i < w.v.size(); ++i) x["v"].push_back(w.v[i].get());
    x["norm"] = to_string(w.norm);
    x["pairing_h"] = w.v.dot(h).get();
    x["outer"] = w.outer;
    j["walls"].push_back(x);
  }
  return j.dump();
}

}  // namespace k3
