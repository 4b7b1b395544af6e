#include "k3/k3aut.hpp"

#include "k3/enumerate.hpp"
#include "k3/export.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace k3 {

using Index = Eigen::Index;

namespace {

int form_order(const FormPerm& p) {
  FormPerm x = p;
  int k = 1;
  while (x != identity_perm(p.size())) x = compose(x, p), ++k;
  return k;
}

bool contains(const std::vector<FormPerm>& v, const FormPerm& p) { return std::find(v.begin(), v.end(), p) != v.end(); }

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

// x * M for an integral map given on a sublattice basis B (rows): the M' with
// B M = M' B, if B's span is preserved
std::optional<IntMatrix> restrict_to(const IntMatrix& B, const RatMatrix& right_inv, const IntMatrix& g) {
  IntMatrix img = B * g;
  RatMatrix m = convert<Rational>(img) * right_inv;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (boost::multiprecision::denominator(m(i, j)) != 1) return std::nullopt;
  IntMatrix mi = convert<Int>(m);
  if (IntMatrix(mi * B) != img) return std::nullopt;
  return mi;
}

RatMatrix right_inverse(const IntMatrix& B) {
  RatMatrix b = convert<Rational>(B);
  return RatMatrix(b.transpose() * inverse(RatMatrix(b * b.transpose())));
}

const RatMatrix& rho_right_inverse() {
  static const RatMatrix r = right_inverse(l40().rho);
  return r;
}

std::optional<IntMatrix> restrict_to_s0(const IntMatrix& g) { return restrict_to(l40().rho, rho_right_inverse(), g); }

IntMatrix perm_to_matrix_x3(const Perm& p) { return isometry_from_line_perm(ns3(), p); }

}  // namespace

// ------------------------------------------------------------------ period

bool PeriodData::satisfied(const IntMatrix& g) const { return contains(allowed, induced_disc_action(q, g)); }

PeriodData period_subgroup(const Lattice& S) {
  PeriodData pd{DiscriminantForm(S), {}, {}};
  pd.group = orthogonal_group_of_form(pd.q);
  if (pd.group.size() != 8) throw std::runtime_error("period_subgroup: O(q) does not have order 8");
  std::size_t order4 = 0, order2 = 0;
  FormPerm g4;
  for (auto& g : pd.group) {
    int o = form_order(g);
    if (o == 4) ++order4, g4 = g;
    if (o == 2) ++order2;
  }
  bool abelian = true;
  for (auto& x : pd.group)
    for (auto& y : pd.group)
      if (compose(x, y) != compose(y, x)) abelian = false;
  // D8: non-abelian, two elements of order 4, five of order 2
  if (abelian || order4 != 2 || order2 != 5) throw std::runtime_error("period_subgroup: O(q) is not dihedral of order 8");
  FormPerm x = identity_perm(pd.q.size());
  for (int k = 0; k < 4; ++k) pd.allowed.push_back(x), x = compose(x, g4);
  std::sort(pd.allowed.begin(), pd.allowed.end());
  return pd;
}

const PeriodData& period_x3() {
  static const PeriodData pd = period_subgroup(ns3().lattice);
  return pd;
}
const PeriodData& period_x0() {
  static const PeriodData pd = period_subgroup(l40().s0);
  return pd;
}

FormPerm PeriodTransfer::operator()(const FormPerm& sigma) const {
  for (auto& [a, b] : map)
    if (a == sigma) return b;
  throw std::invalid_argument("period_transfer: not an element of O(q_S3)");
}

const PeriodTransfer& period_transfer() {
  static const PeriodTransfer t = [] {
    PeriodTransfer out;
    const NS3& ns = ns3();
    const L40Data& d = l40();
    const Lattice& S3 = ns.lattice;
    SubLattice q = orthogonal_complement(S3, d.rho);
    IntMatrix tr = lll_transform(IntMatrix(-q.lattice.gram()));
    q.basis = tr * q.basis;
    q.lattice = Lattice(IntMatrix(q.basis * S3.gram() * q.basis.transpose()));
    out.q = q;
    out.oq = definite_isometries(q.lattice);
    DiscriminantForm dq(q.lattice);
    const PeriodData& p3 = period_x3();
    const PeriodData& p0 = period_x0();
    RatMatrix qg = convert<Rational>(IntMatrix(S3.gram() * q.basis.transpose()));
    const RatMatrix& qinv = q.lattice.gram_inverse();
    // A(S3) -> 3-part of A(Q): 4 * pr_Q
    std::vector<std::size_t> phi3(p3.q.size());
    for (std::size_t i = 0; i < p3.q.size(); ++i) {
      RatVector y = RatVector(p3.q.lift(p3.q.element_at(i)) * qg) * qinv;
      phi3[i] = dq.index_of(dq.scale(dq.element_of(y), 4));
    }
    // A(S0) -> 2-part of A(Q): the glue partner
    std::vector<std::size_t> two_part;
    for (std::size_t k = 0; k < dq.size(); ++k)
      if (dq.index_of(dq.scale(dq.element_at(k), 4)) == dq.index_of(dq.scale(dq.element_at(0), 0))) two_part.push_back(k);
    RatMatrix rho = convert<Rational>(d.rho), qb = convert<Rational>(q.basis);
    std::vector<std::size_t> phi2(p0.q.size());
    for (std::size_t j = 0; j < p0.q.size(); ++j) {
      RatVector x = p0.q.lift(p0.q.element_at(j)) * rho;
      int hits = 0;
      for (std::size_t k : two_part) {
        RatVector s = x + dq.lift(dq.element_at(k)) * qb;
        bool integral = true;
        for (Index c = 0; c < s.size(); ++c)
          if (boost::multiprecision::denominator(s[c]) != 1) integral = false;
        if (integral) phi2[j] = k, ++hits;
      }
      if (hits != 1) throw std::logic_error("period_transfer: gluing is not a bijection");
    }
    auto pull = [&](const FormPerm& eq, const std::vector<std::size_t>& phi) {
      std::unordered_map<std::size_t, std::size_t> back;
      for (std::size_t i = 0; i < phi.size(); ++i) back[phi[i]] = i;
      FormPerm s(phi.size());
      for (std::size_t i = 0; i < phi.size(); ++i) {
        auto it = back.find(eq[phi[i]]);
        if (it == back.end()) throw std::logic_error("period_transfer: isometry of Q does not preserve the part");
        s[i] = it->second;
      }
      return s;
    };
    std::set<FormPerm> s3, s0;
    for (auto& h : out.oq) {
      FormPerm eq = induced_disc_action(dq, h);
      FormPerm a = pull(eq, phi3), b = pull(eq, phi2);
      s3.insert(a), s0.insert(b);
      out.map.emplace_back(a, b);
    }
    out.three_part_bijective = s3.size() == out.oq.size() && s3 == std::set<FormPerm>(p3.group.begin(), p3.group.end());
    out.two_part_bijective = s0.size() == out.oq.size() && s0 == std::set<FormPerm>(p0.group.begin(), p0.group.end());
    if (!out.three_part_bijective || !out.two_part_bijective)
      throw std::runtime_error("period_transfer: O(Q) does not map bijectively onto both O(q)");
    out.allowed_to_allowed = true;
    for (auto& [a, b] : out.map)
      if (contains(p3.allowed, a) != contains(p0.allowed, b)) out.allowed_to_allowed = false;
    std::sort(out.map.begin(), out.map.end());
    return out;
  }();
  return t;
}

// ------------------------------------------------------------------ Aut(X0,h0)

IntMatrix isometry_from_curve_perm(const IntMatrix& classes, const Perm& p) {
  const Index n = classes.cols();
  IntMatrix m(n, n);
  for (Index k = 0; k < n; ++k) {
    Index row = -1;
    for (Index i = 0; i < classes.rows() && row < 0; ++i) {
      bool unit = true;
      for (Index j = 0; j < n && unit; ++j) unit = classes(i, j) == (j == k ? 1 : 0);
      if (unit) row = i;
    }
    if (row < 0) throw std::invalid_argument("isometry_from_curve_perm: the classes contain no basis");
    m.row(k) = classes.row(p[std::size_t(row)]);
  }
  return m;
}

Perm AutX0::petersen_action(const Perm& p) const {
  Perm out(10, -1);
  for (int v = 0; v < 40; ++v) {
    int a = gamma(v), b = gamma(p[std::size_t(v)]);
    if (out[std::size_t(a)] >= 0 && out[std::size_t(a)] != b) throw std::logic_error("petersen_action: not fibre preserving");
    out[std::size_t(a)] = b;
  }
  return out;
}

const AutX0& aut_x0_h0() {
  static const AutX0 a = [] {
    AutX0 out;
    const L40Data& d = l40();
    const PeriodData& pd = period_x0();
    out.graph_aut = automorphism_group(d.graph).group;
    std::vector<Perm> good;
    std::optional<Perm> t;
    for (auto& s : out.graph_aut.generators()) {
      IntMatrix m = isometry_from_curve_perm(d.classes, s);
      if (!is_isometry(d.s0, m) || IntVector(d.h0 * m) != d.h0) throw std::logic_error("aut_x0_h0: graph automorphism is not an isometry fixing h0");
      if (pd.satisfied(m)) good.push_back(s);
      else if (!t) t = s;
    }
    // Schreier generators of the kernel of the sign, transversal {1, t}
    std::vector<Perm> gens;
    for (auto& s : out.graph_aut.generators()) {
      bool ok = pd.satisfied(isometry_from_curve_perm(d.classes, s));
      if (ok) {
        gens.push_back(s);
        if (t) gens.push_back(perm_mul(perm_mul(*t, s), perm_inv(*t)));
      } else {
        gens.push_back(perm_mul(s, perm_inv(*t)));
        gens.push_back(perm_mul(*t, s));
      }
    }
    out.aut = PermGroup(40, gens);
    out.elements = out.aut.elements();
    std::sort(out.elements.begin(), out.elements.end());
    // the period condition really is a homomorphism with this kernel
    for (auto& g : out.graph_aut.elements())
      if (pd.satisfied(isometry_from_curve_perm(d.classes, g)) != out.aut.contains(g))
        throw std::logic_error("aut_x0_h0: period condition does not cut out the subgroup");
    out.gamma = induced_covering(d.graph);
    std::vector<Perm> pg;
    for (auto& g : out.aut.generators()) pg.push_back(out.petersen_action(g));
    out.petersen_image = PermGroup(10, pg);
    for (auto& g : out.elements)
      if (perm_is_identity(out.petersen_action(g))) out.kernel.push_back(g);
    out.kernel_exponent_two = out.kernel_abelian = true;
    for (auto& x : out.kernel) {
      if (!perm_is_identity(perm_mul(x, x))) out.kernel_exponent_two = false;
      for (auto& y : out.kernel)
        if (perm_mul(x, y) != perm_mul(y, x)) out.kernel_abelian = false;
    }
    return out;
  }();
  return a;
}

const AutX0Fibre& aut_x0_f() {
  static const AutX0Fibre r = [] {
    AutX0Fibre out;
    const L40Data& d = l40();
    const AutX0& a = aut_x0_h0();
    const Fibration& fib = fermat_fibration();
    std::unordered_map<int, int> pos;
    for (std::size_t i = 0; i < d.lines.size(); ++i) pos[d.lines[i]] = int(i);
    for (auto& F : fib.fibers) {
      std::array<int, 4> b{};
      for (int j = 0; j < 4; ++j) {
        auto it = pos.find(F[std::size_t(j)]);
        if (it == pos.end()) throw std::logic_error("aut_x0_f: fibre line outside L40");
        b[std::size_t(j)] = it->second;
      }
      out.blocks.push_back(b);
    }
    out.f = IntVector::Zero(d.s0.rank());
    for (int l : out.blocks[0]) out.f += d.classes.row(l);
    const auto& gens = a.aut.generators();
    std::vector<IntMatrix> mats;
    for (auto& g : gens) mats.push_back(a.isometry(g));
    auto act = [&](const IntVector& v, std::size_t s) { return IntVector(v * mats[s]); };
    OrbitTree<IntVector, VecHash, VecEq> tree(out.f, gens.size(), act);
    out.orbit = tree.points;
    out.stabilizer = stabilizer_from_orbit(tree, gens, act, 40);
    auto block_of = [&](int line) {
      for (std::size_t c = 0; c < out.blocks.size(); ++c)
        for (int l : out.blocks[c])
          if (l == line) return int(c);
      return -1;
    };
    std::vector<Perm> bg;
    for (auto& g : out.stabilizer.generators()) {
      Perm p(out.blocks.size());
      for (std::size_t c = 0; c < out.blocks.size(); ++c) {
        p[c] = block_of(g[std::size_t(out.blocks[c][0])]);
        for (int l : out.blocks[c])
          if (block_of(g[std::size_t(l)]) != p[c]) throw std::logic_error("aut_x0_f: blocks not preserved");
      }
      bg.push_back(p);
    }
    out.block_image_order = PermGroup(int(out.blocks.size()), bg).order();
    out.block_kernel_order = out.stabilizer.order() / out.block_image_order;
    std::vector<Perm> meet;
    for (auto& g : a.elements) {
      IntMatrix m = a.isometry(g);
      bool all = true;
      for (auto& f : out.orbit)
        if (IntVector(f * m) != f) all = false;
      if (all) meet.push_back(g);
    }
    out.galois_is_intersection = meet == a.kernel;
    return out;
  }();
  return r;
}

// ------------------------------------------------------------------ double planes

DoublePlaneData dpp_test(const Lattice& S, const IntVector& a, const IntVector& b) {
  if (S.norm(b) != 2) throw std::invalid_argument("dpp_test: <b,b> != 2");
  DoublePlaneData d;
  d.b = b;
  d.nef = separating_roots(S, a, b).empty();
  if (!d.nef) {
    d.failure = "not nef";
    return d;
  }
  d.base_point_free = constrained_vectors(S, b, 0, 1).empty();
  if (!d.base_point_free) {
    d.failure = "not base-point free";
    return d;
  }
  SliceEnumerator perp(S, IntMatrix(b));
  IntVector zero = IntVector::Zero(1);
  auto roots = perp.solve(zero, -2);
  d.sigma = simple_roots(S, roots, convert_vec<Rational>(a));
  IntMatrix g(Index(d.sigma.size()), Index(d.sigma.size()));
  for (std::size_t i = 0; i < d.sigma.size(); ++i)
    for (std::size_t j = 0; j < d.sigma.size(); ++j) g(Index(i), Index(j)) = S.pair(d.sigma[i], d.sigma[j]);
  d.type = ade_type_of_simple_roots(g);
  return d;
}

void double_plane_involution(const Lattice& S, const IntVector& a, DoublePlaneData& d) {
  if (!d.is_polarization()) throw std::invalid_argument("double_plane_involution: not a double-plane polarization");
  for (auto& [letter, n] : d.type)
    if (letter != 'A') {
      d.failure = "component of type " + std::string(1, letter) + std::to_string(n) + " (only type A is handled)";
      return;
    }
  const std::size_t m = d.sigma.size();
  std::vector<std::vector<int>> adj(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (i != j && S.pair(d.sigma[i], d.sigma[j]) != 0) adj[i].push_back(int(j));
  std::vector<IntVector> inv{d.b};
  std::vector<char> seen(m, 0);
  for (std::size_t s = 0; s < m; ++s) {
    if (seen[s] || adj[s].size() > 1) continue;
    // walk the chain from an end
    std::vector<int> chain{int(s)};
    seen[s] = 1;
    for (;;) {
      int next = -1;
      for (int t : adj[std::size_t(chain.back())])
        if (!seen[std::size_t(t)]) next = t;
      if (next < 0) break;
      seen[std::size_t(next)] = 1;
      chain.push_back(next);
    }
    for (std::size_t i = 0, j = chain.size() - 1; i <= j; ++i, --j) {
      inv.push_back(i == j ? d.sigma[std::size_t(chain[i])]
                           : IntVector(d.sigma[std::size_t(chain[i])] + d.sigma[std::size_t(chain[j])]));
      if (j == 0) break;
    }
  }
  IntMatrix V(Index(inv.size()), S.rank());
  for (std::size_t i = 0; i < inv.size(); ++i) V.row(Index(i)) = inv[i];
  RatMatrix Vr = convert<Rational>(V), G = convert<Rational>(S.gram());
  RatMatrix P = G * Vr.transpose() * inverse(RatMatrix(Vr * G * Vr.transpose())) * Vr;
  RatMatrix g = P * Rational(2) - RatMatrix::Identity(S.rank(), S.rank());
  for (Index i = 0; i < g.rows(); ++i)
    for (Index j = 0; j < g.cols(); ++j)
      if (boost::multiprecision::denominator(g(i, j)) != 1) {
        d.failure = "construction hypothesis falsified: reflection in the invariant space is not integral";
        return;
      }
  IntMatrix gi = convert<Int>(g);
  if (!is_isometry(S, gi) || IntMatrix(gi * gi) != IntMatrix::Identity(S.rank(), S.rank())) {
    d.failure = "construction hypothesis falsified: not an isometric involution";
    return;
  }
  if (IntVector(d.b * gi) != d.b) {
    d.failure = "construction hypothesis falsified: b not fixed";
    return;
  }
  if (!separating_roots(S, a, IntVector(a * gi)).empty()) {
    d.failure = "construction hypothesis falsified: the nef cone is not preserved";
    return;
  }
  d.involution = gi;
}

std::optional<DoublePlaneData> dpp_for_wall(const Embedding& e, const Chamber& c, int k, const IntVector& a,
                                            int max_degree) {
  const Lattice& S = e.S();
  const Wall& wall = c.walls.at(std::size_t(k));
  IntVector u = primitive_part(e.scaled_dual(wall.v));
  IntMatrix cons(2, S.rank());
  cons << a, u;
  SliceEnumerator slice(S, cons);
  IntVector w2 = adjacent_weyl(e, c, k);
  auto cands = wall_candidates(e, w2);
  std::unordered_set<IntVector, VecHash, VecEq> cset(cands.begin(), cands.end());
  for (int deg = 1; deg <= max_degree; ++deg) {
    IntVector t(2);
    t << Int(deg), Int(0);
    std::vector<DoublePlaneData> found;
    for (auto& b : slice.solve(t, 2)) {
      DoublePlaneData d = dpp_test(S, a, b);
      if (!d.is_polarization()) continue;
      double_plane_involution(S, a, d);
      if (!d.involution) continue;
      bool maps = true;
      for (auto& w : c.walls)
        if (!cset.count(e.act_dual(*d.involution, w.v))) {
          maps = false;
          break;
        }
      if (maps) found.push_back(std::move(d));
    }
    if (found.empty()) continue;
    // several b may do; prefer the largest singular locus, then the
    // smallest vector (solve() returns them sorted)
    auto rank = [](const AdeType& t) {
      int r = 0;
      for (auto& [c, n] : t) r += n;
      return r;
    };
    std::stable_sort(found.begin(), found.end(),
                     [&](const DoublePlaneData& x, const DoublePlaneData& y) { return rank(x.type) > rank(y.type); });
    std::set<std::string> types;
    for (auto& d : found) types.insert(ade_string(d.type));
    DoublePlaneData best = std::move(found.front());
    best.alternatives = found.size();
    best.alternative_types.assign(types.begin(), types.end());
    return best;
  }
  return std::nullopt;
}

// ------------------------------------------------------------------ transporters

std::optional<Transport> adjacent_transporter(const Embedding& e, const PeriodData& pd, const Chamber& c, int k,
                                              const std::vector<IntMatrix>& aut_c, const PermGroup* aut_outer) {
  const Wall& wall = c.walls.at(std::size_t(k));
  if (wall.outer) throw std::invalid_argument("adjacent_transporter: wall is outer");
  IntVector w2 = adjacent_weyl(e, c, k);
  auto t = transport_to_weyl(e, c, w2, [&](const IntMatrix& g) { return pd.satisfied(g); }, aut_c, aut_outer);
  if (!t) {
    // the roots among the candidates did not match; take the full chamber
    Chamber c2 = adjacent_chamber(e, c, k);
    auto g = chamber_transport(e, c, c2, [&](const IntMatrix& g) { return pd.satisfied(g); }, aut_c);
    if (!g) return std::nullopt;
    t = Transport{*g, transform_chamber(e, c, *g, w2)};
  }
  if (t->image.find(IntVector(-wall.v)) < 0) throw std::logic_error("adjacent_transporter: image is not across the wall");
  return t;
}

namespace {

PermGroup outer_group(const Chamber& c, const IntMatrix& classes, const std::vector<Perm>& perms) {
  // curve index <-> outer wall index through the root classes
  auto o = c.outer();
  std::unordered_map<IntVector, int, VecHash, VecEq> wall_of;
  for (std::size_t i = 0; i < o.size(); ++i) wall_of.emplace(c.walls[std::size_t(o[i])].root, int(i));
  std::vector<int> curve_to_wall(std::size_t(classes.rows()));
  for (Index l = 0; l < classes.rows(); ++l) {
    auto it = wall_of.find(IntVector(classes.row(l)));
    if (it == wall_of.end()) throw std::logic_error("outer_group: curve is not an outer wall");
    curve_to_wall[std::size_t(l)] = it->second;
  }
  std::vector<int> wall_to_curve(o.size());
  for (std::size_t l = 0; l < curve_to_wall.size(); ++l) wall_to_curve[std::size_t(curve_to_wall[l])] = int(l);
  std::vector<Perm> gens;
  for (auto& p : perms) {
    Perm q(o.size());
    for (std::size_t i = 0; i < o.size(); ++i) q[i] = curve_to_wall[std::size_t(p[std::size_t(wall_to_curve[i])])];
    gens.push_back(q);
  }
  return PermGroup(int(o.size()), gens);
}

void sort_orbits(std::vector<std::vector<int>>& orbits) {
  std::stable_sort(orbits.begin(), orbits.end(),
                   [](const auto& a, const auto& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });
}

}  // namespace

const SurfaceChamber& chamber_x3() {
  static const SurfaceChamber sc = [] {
    SurfaceChamber out;
    const Ns3Embedding& n3 = embed_ns3();
    const Pgu4& pg = pgu4();
    out.e = &n3.e;
    out.h = ns3().h3;
    ChamberOptions opt;
    opt.symmetry = pg.isometries;
    out.chamber = chamber_walls_cached(n3.e, l26_with_weyl().weyl, opt);
    out.aut_period = pg.isometries;
    out.aut = pg.isometries;
    Perm frob = frobenius_line_permutation();
    out.aut.push_back(perm_to_matrix_x3(frob));
    std::vector<Perm> perms = pg.line_perms;
    perms.push_back(frob);
    out.aut_outer = outer_group(out.chamber, ns3().classes, perms);
    out.inner_orbits = orbit_walls(n3.e, out.aut_period, out.chamber, out.chamber.inner());
    sort_orbits(out.inner_orbits);
    return out;
  }();
  return sc;
}

const SurfaceChamber& chamber_x0() {
  static const SurfaceChamber sc = [] {
    SurfaceChamber out;
    const Embedding& e = embed_ns0();
    const L40Data& d = l40();
    const AutX0& a = aut_x0_h0();
    out.e = &e;
    out.h = d.h0;
    for (auto& g : a.graph_aut.generators()) out.aut.push_back(a.isometry(g));
    for (auto& g : a.aut.generators()) out.aut_period.push_back(a.isometry(g));
    ChamberOptions opt;
    opt.symmetry = out.aut;
    out.chamber = chamber_walls_cached(e, l26_with_weyl().weyl, opt);
    out.aut_outer = outer_group(out.chamber, d.classes, a.graph_aut.generators());
    out.inner_orbits = orbit_walls(e, out.aut_period, out.chamber, out.chamber.inner());
    sort_orbits(out.inner_orbits);
    return out;
  }();
  return sc;
}

GeneratorReport aut_generators(const SurfaceChamber& sc) {
  GeneratorReport r;
  const bool x3 = sc.e->S().rank() == 22;
  r.surface = x3 ? "x3" : "x0";
  const PeriodData& pd = x3 ? period_x3() : period_x0();
  for (auto& orbit : sc.inner_orbits) {
    int k = orbit.front();
    const Wall& w = sc.chamber.walls[std::size_t(k)];
    auto t = adjacent_transporter(*sc.e, pd, sc.chamber, k, sc.aut, &sc.aut_outer);
    if (!t) throw std::runtime_error("aut_generators: no period-condition transporter across a wall");
    GeneratorReport::Item it{orbit.size(), k, w.norm, w.v.dot(sc.h), t->g, sc.e->S().pair(sc.h, IntVector(sc.h * t->g)),
                             pd.satisfied(t->g), t->image.find(IntVector(-w.v)) >= 0};
    r.items.push_back(std::move(it));
  }
  return r;
}

std::vector<DoublePlaneRow> double_plane_table(const SurfaceChamber& sc) {
  std::vector<DoublePlaneRow> rows;
  const Lattice& S = sc.e->S();
  for (auto& orbit : sc.inner_orbits) {
    DoublePlaneRow r;
    r.orbit_size = orbit.size();
    r.wall = orbit.front();
    const Wall& w = sc.chamber.walls[std::size_t(r.wall)];
    r.norm = w.norm;
    r.pairing_h = w.v.dot(sc.h);
    r.dpp = dpp_for_wall(*sc.e, sc.chamber, r.wall, sc.h);
    if (r.dpp && r.dpp->involution) {
      r.pairing_b = S.pair(sc.h, r.dpp->b);
      r.degree = S.pair(sc.h, IntVector(sc.h * *r.dpp->involution));
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<LiftedPolarization> lifted_polarizations() {
  const SurfaceChamber& x0 = chamber_x0();
  const L40Data& d = l40();
  const NS3& n3 = ns3();
  const auto& sep = specialization_analysis().separated;
  std::vector<LiftedPolarization> out;
  for (auto& row : double_plane_table(x0)) {
    auto it = sep.find(row.orbit_size);
    if (it == sep.end() || it->second || !row.dpp || !row.dpp->involution) continue;
    LiftedPolarization lp;
    lp.orbit_size = row.orbit_size;
    lp.degree0 = row.degree;
    lp.b = row.dpp->b * d.rho;
    lp.pairing_h3 = n3.lattice.pair(n3.h3, lp.b);
    lp.on_x3 = dpp_test(n3.lattice, n3.h3, lp.b);
    if (lp.on_x3.is_polarization()) {
      double_plane_involution(n3.lattice, n3.h3, lp.on_x3);
      if (lp.on_x3.involution) lp.degree3 = n3.lattice.pair(n3.h3, IntVector(n3.h3 * *lp.on_x3.involution));
    }
    out.push_back(std::move(lp));
  }
  return out;
}

// ------------------------------------------------------------------ specialization

const SpecializationReport& specialization_analysis() {
  static const SpecializationReport rep = [] {
    SpecializationReport out;
    const SurfaceChamber& x3 = chamber_x3();
    const Embedding& e = *x3.e;
    const Chamber& D3 = x3.chamber;
    const L40Data& d = l40();
    const Lattice& S3 = ns3().lattice;
    const Pgu4& pg = pgu4();

    IntVector h0 = d.h0 * d.rho;  // in S3

    auto contains_p0 = [&](const Chamber& c) {
      std::vector<int> idx;
      for (std::size_t i = 0; i < c.walls.size(); ++i)
        if (IntVector(d.rho * c.walls[i].v.transpose()).isZero()) idx.push_back(int(i));
      return idx;
    };
    out.perp_walls = contains_p0(D3);
    if (out.perp_walls.size() != 2) throw std::runtime_error("specialization: D3 does not have exactly two walls over P0");
    // h0 lies in D3, on the two walls over P0 only; in particular on no
    // outer wall, so it is ample on X3
    out.h0_in_d3 = true;
    for (std::size_t i = 0; i < D3.walls.size(); ++i) {
      Int s = D3.walls[i].v.dot(h0);
      bool on = std::find(out.perp_walls.begin(), out.perp_walls.end(), int(i)) != out.perp_walls.end();
      if (on ? s != 0 : s <= 0) out.h0_in_d3 = false;
    }
    const auto& o648 = x3.inner_orbits.front();
    out.perp_in_648 = o648.size() == 648;
    for (int k : out.perp_walls)
      if (!std::binary_search(o648.begin(), o648.end(), k)) out.perp_in_648 = false;
    const int v1 = out.perp_walls[0], v2 = out.perp_walls[1];
    out.perp_pairing = e.dual_pair(D3.walls[std::size_t(v1)].v, D3.walls[std::size_t(v2)].v);
    std::size_t pairs = 0;
    for (int a : o648) {
      std::size_t cnt = 0;
      for (int b : o648)
        if (a != b && e.dual_pair(D3.walls[std::size_t(a)].v, D3.walls[std::size_t(b)].v) == 0) ++cnt;
      if (a == v1) out.partners = cnt;
      pairs += cnt;
    }
    out.perpendicular_pairs = pairs / 2;

    // PGU4 on the walls of D3, and the orbit of the pair {v1, v2}
    const std::size_t N = D3.walls.size();
    std::vector<std::vector<int>> wall_perm(pg.isometries.size(), std::vector<int>(N));
    for (std::size_t s = 0; s < pg.isometries.size(); ++s)
      for (std::size_t i = 0; i < N; ++i) {
        int j = D3.find(e.act_dual(pg.isometries[s], D3.walls[i].v));
        if (j < 0) throw std::logic_error("specialization: PGU4 does not preserve D3");
        wall_perm[s][i] = j;
      }
    auto code = [&](int a, int b) { return std::uint64_t(std::min(a, b)) * N + std::uint64_t(std::max(a, b)); };
    auto act = [&](const std::uint64_t& c, std::size_t s) {
      int a = int(c / N), b = int(c % N);
      return code(wall_perm[s][std::size_t(a)], wall_perm[s][std::size_t(b)]);
    };
    OrbitTree<std::uint64_t> tree(code(v1, v2), pg.isometries.size(), act);
    if (tree.size() != out.perpendicular_pairs) throw std::runtime_error("specialization: PGU4 is not transitive on perpendicular pairs");
    PermGroup H = stabilizer_from_orbit(tree, pg.line_perms, act, 112);
    out.pair_stabilizer = H.order();

    // the chambers around the face D0
    const PeriodData& p3 = period_x3();
    auto ok = [&](const IntMatrix& g) { return p3.satisfied(g); };
    auto cross = [&](const Chamber& c, const IntVector& v) {
      int k = c.find(v);
      if (k < 0) throw std::logic_error("specialization: wall missing");
      auto t = transport_to_weyl(e, D3, adjacent_weyl(e, c, k), ok, x3.aut, &x3.aut_outer);
      if (!t) throw std::runtime_error("specialization: no transporter to a chamber over D0");
      return *t;
    };
    const IntVector& u1 = D3.walls[std::size_t(v1)].v;
    const IntVector& u2 = D3.walls[std::size_t(v2)].v;
    Transport t1 = cross(D3, u1), t2 = cross(D3, u2);
    Transport t3 = cross(t1.image, u2);
    Transport t3b = cross(t2.image, u1);
    if (t3.image.weyl != t3b.image.weyl) throw std::runtime_error("specialization: chambers around D0 do not close up");
    std::vector<const Chamber*> around{&D3, &t1.image, &t2.image, &t3.image};
    std::set<IntVector, VecLess> weyls;
    for (auto* c : around) {
      weyls.insert(c->weyl);
      if (contains_p0(*c).size() != 2) throw std::runtime_error("specialization: chamber with other walls over P0");
    }
    out.chambers_over_d0 = weyls.size();

    // coset representatives a_i t_i mapping {v1, v2} onto the P0-walls
    IntMatrix id = IntMatrix::Identity(22, 22);
    std::vector<IntMatrix> ts{id, t1.g, t2.g, t3.g};
    for (std::size_t i = 0; i < 4; ++i) {
      const Chamber& c = *around[i];
      auto pw = contains_p0(c);
      IntMatrix tinv = convert<Int>(inverse(ts[i]));
      int a = D3.find(e.act_dual(tinv, c.walls[std::size_t(pw[0])].v));
      int b = D3.find(e.act_dual(tinv, c.walls[std::size_t(pw[1])].v));
      int pos = tree.find(code(a, b));
      if (pos < 0) throw std::runtime_error("specialization: P0-walls of a neighbour are not a PGU4-image of {v1,v2}");
      IntMatrix g = id;
      for (int s : tree.word(pos)) g = g * pg.isometries[std::size_t(s)];
      out.coset_reps.push_back(IntMatrix(g * ts[i]));
    }

    // Aut(X3, D0) = union of H g_i
    auto helems = H.elements();
    std::vector<IntMatrix> hm;
    for (auto& p : helems) hm.push_back(perm_to_matrix_x3(p));
    std::unordered_set<IntMatrix, MatHash, MatEq> all;
    std::set<std::vector<Int>> restrictions;
    out.restriction_respects_period = true;
    const PeriodData& p0 = period_x0();
    const PeriodTransfer& tr = period_transfer();
    for (auto& gi : out.coset_reps) {
      std::size_t before = all.size();
      for (auto& h : hm) {
        IntMatrix g = h * gi;
        if (!all.insert(g).second) continue;
        auto r = restrict_to_s0(g);
        if (!r || !is_isometry(d.s0, *r) || IntVector(d.h0 * *r) != d.h0)
          throw std::runtime_error("specialization: element of Aut(X3,D0) does not restrict to Aut(S0,h0)");
        restrictions.insert(std::vector<Int>(r->data(), r->data() + r->size()));
        if (!p3.satisfied(g) || !p0.satisfied(*r) ||
            tr(induced_disc_action(p3.q, g)) != induced_disc_action(p0.q, *r))
          out.restriction_respects_period = false;
        out.aut_d0.push_back(g);
      }
      out.coset_sizes.push_back(all.size() - before);
    }
    std::set<std::vector<Int>> target;
    const AutX0& ax = aut_x0_h0();
    for (auto& p : ax.elements) {
      IntMatrix m = ax.isometry(p);
      target.insert(std::vector<Int>(m.data(), m.data() + m.size()));
    }
    out.restriction_onto = restrictions == target && restrictions.size() == all.size();

    // which inner walls of D0 are walls of the nef chamber of X0 inside X3
    const SurfaceChamber& x0 = chamber_x0();
    GeneratorReport gens = aut_generators(x0);
    for (auto& it : gens.items) {
      IntVector a = d.h0 * d.rho, b = IntVector(d.h0 * it.g) * d.rho;
      out.separated[it.orbit_size] = !separating_roots(S3, a, b).empty();
    }
    return out;
  }();
  return rep;
}

namespace {

// PGU4-orbits of a PGU4-invariant set of classes, given only the members F
// whose largest pairing with the lines is attained on line 0. F is stable
// under the stabilizer H of line 0; two members lie in one orbit iff they
// are joined by H or by an element moving another maximal line to line 0.
// An orbit O then has |O| = sum over O cap F of 112 / (number of maximal
// lines), so nothing of the size of O is ever stored.
std::vector<std::size_t> orbits_through_line0(const std::vector<IntVector>& found, std::size_t total) {
  const NS3& s = ns3();
  const Pgu4& pg = pgu4();
  const int nl = int(s.classes.rows());
  OrbitTree<int> lines(0, pg.line_perms.size(), [&](int l, std::size_t g) { return pg.line_perms[g][std::size_t(l)]; });
  PermGroup h = stabilizer_from_orbit(lines, pg.line_perms,
                                      [&](int l, std::size_t g) { return pg.line_perms[g][std::size_t(l)]; }, nl);
  std::vector<IntMatrix> hiso;
  for (auto& p : h.generators()) hiso.push_back(isometry_from_line_perm(s, p));
  // to_zero[l] sends line l to line 0
  std::vector<IntMatrix> to_zero(static_cast<std::size_t>(nl));
  for (std::size_t i = 0; i < lines.size(); ++i) {
    Perm p = perm_identity(nl);
    for (int g : lines.word(int(i))) p = perm_mul(p, pg.line_perms[std::size_t(g)]);
    to_zero[std::size_t(lines.points[i])] = isometry_from_line_perm(s, perm_inv(p));
  }
  std::unordered_map<IntVector, std::size_t, VecHash, VecEq> index;
  for (std::size_t i = 0; i < found.size(); ++i) index.emplace(found[i], i);
  std::vector<std::size_t> parent(found.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto join = [&](std::size_t a, const IntVector& img) {
    auto it = index.find(img);
    if (it == index.end()) throw std::logic_error("curve_counts: image leaves the line-0 slice");
    parent[root(a)] = root(it->second);
  };
  std::vector<Rational> weight(found.size());
  for (std::size_t i = 0; i < found.size(); ++i) {
    const IntVector& r = found[i];
    IntVector p = s.lattice.pairings(r) * s.classes.transpose();
    Int m = p.maxCoeff();
    int k = 0;
    for (int l = 0; l < nl; ++l)
      if (p[l] == m) {
        ++k;
        join(i, IntVector(r * to_zero[std::size_t(l)]));
      }
    weight[i] = Rational(nl, k);
    for (auto& g : hiso) join(i, IntVector(r * g));
  }
  std::map<std::size_t, Rational> size;
  for (std::size_t i = 0; i < found.size(); ++i) size[root(i)] += weight[i];
  std::vector<std::size_t> out;
  std::size_t sum = 0;
  for (auto& [r, w] : size) {
    if (boost::multiprecision::denominator(w) != 1) throw std::logic_error("curve_counts: non-integral orbit size");
    out.push_back(std::size_t(boost::multiprecision::numerator(w).convert_to<unsigned long long>()));
    sum += out.back();
  }
  if (sum != total) throw std::logic_error("curve_counts: orbits do not add up");
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace

CurveCounts curve_counts(int max_degree, bool orbits) {
  CurveCounts out;
  const NS3& s = ns3();
  const Lattice& S = s.lattice;
  const Index n = S.rank();
  IntMatrix lines2(2 * s.classes.rows(), n);
  lines2 << s.classes, IntMatrix(-s.classes);
  std::vector<IntVector> lower_degree;  // C_d' for d' < d, beyond the lines
  for (int d = 1; d <= max_degree; ++d) {
    std::vector<IntVector> found;
    Rational total = 0;
    if (d == 1) {
      for (Index l = 0; l < s.classes.rows(); ++l) found.push_back(s.classes.row(l));
      total = Rational(s.classes.rows());
    } else {
      // every class of degree d pairs nonnegatively with the lines; one of
      // the lines attains the maximum m >= d/4 (four lines add up to h3),
      // and PGU4 is transitive on lines: fix that line to be line 0
      IntMatrix cons(2, n);
      cons << s.h3, s.classes.row(0);
      // pairing with a class is a dot product with these columns
      IntMatrix lines_g = S.gram() * s.classes.transpose();
      IntMatrix lower_g(n, static_cast<Index>(lower_degree.size()));
      for (std::size_t i = 0; i < lower_degree.size(); ++i)
        lower_g.col(static_cast<Index>(i)) = (lower_degree[i] * S.gram()).transpose();
      SliceEnumerator slice(S, cons);
      for (int m = (d + 3) / 4; m <= d; ++m) {
        IntVector t(2);
        t << Int(d), Int(m);
        IntVector low(lines2.rows());
        for (Index i = 0; i < s.classes.rows(); ++i) low[i] = 0, low[i + s.classes.rows()] = -m;
        slice.visit_in_cone(t, -2, -2, lines2, low, [&](const IntVector& r) {
          if (lower_g.cols() > 0 && IntVector(r * lower_g).minCoeff() < 0) return true;
          IntVector on_lines = r * lines_g;
          int k = 0;
          for (Index l = 0; l < on_lines.size(); ++l) k += on_lines[l] == m;
          total += Rational(s.classes.rows(), k);
          found.push_back(r);
          return true;
        });
      }
    }
    if (boost::multiprecision::denominator(total) != 1) throw std::logic_error("curve_counts: non-integral count");
    std::size_t count = std::size_t(boost::multiprecision::numerator(total).convert_to<unsigned long long>());
    out.counts[d] = count;
    if (orbits && !found.empty()) {
      if (d == 1) {
        // the lines themselves: one orbit
        out.orbit_sizes[d] = {pgu4().group.orbit(0).size()};
      } else {
        out.orbit_sizes[d] = orbits_through_line0(found, count);
      }
    }
    // the full set of degree d is needed for the next degrees
    if (count > 0 && d > 1 && d < max_degree) {
      const Pgu4& pg = pgu4();
      std::unordered_set<IntVector, VecHash, VecEq> all;
      for (auto& r : found) {
        if (all.count(r)) continue;
        OrbitTree<IntVector, VecHash, VecEq> tree(
            r, pg.isometries.size(), [&](const IntVector& v, std::size_t g) { return IntVector(v * pg.isometries[g]); });
        for (auto& p : tree.points) all.insert(p);
      }
      if (all.size() != count) throw std::logic_error("curve_counts: closure under PGU4 has the wrong size");
      lower_degree.insert(lower_degree.end(), all.begin(), all.end());
      std::sort(lower_degree.begin(), lower_degree.end(), VecLess());
    }
  }
  return out;
}

// ------------------------------------------------------------------ Enriques

EnriquesCertificate enriques_test(const Lattice& S, const IntMatrix& g) {
  EnriquesCertificate c;
  c.g = g;
  const Index n = S.rank();
  IntMatrix id = IntMatrix::Identity(n, n);
  IntMatrix kp = kernel_basis(IntMatrix(g - id)), km = kernel_basis(IntMatrix(g + id));
  c.fixed = SubLattice{Lattice(IntMatrix(kp * S.gram() * kp.transpose())), kp};
  c.anti = SubLattice{Lattice(IntMatrix(km * S.gram() * km.transpose())), km};
  if (kp.rows() == 10 && c.fixed.lattice.is_hyperbolic()) c.rank10_hyperbolic = true;
  if (kp.rows() > 0) {
    const IntMatrix& G = c.fixed.lattice.gram();
    bool half = true;
    for (Index i = 0; i < G.rows() && half; ++i)
      for (Index j = 0; j < G.cols() && half; ++j) half = G(i, j) % 2 == 0 && (i != j || G(i, j) % 4 == 0);
    if (half) {
      IntMatrix h(G.rows(), G.cols());
      for (Index i = 0; i < G.rows(); ++i)
        for (Index j = 0; j < G.cols(); ++j) h(i, j) = G(i, j) / 2;
      c.half_even_unimodular = abs(narrow(determinant(h))) == 1;
    }
  }
  if (km.rows() == 0) {
    c.anti_root_free = true;
  } else if (c.anti.lattice.is_negative_definite()) {
    c.anti_root_free = short_vectors(c.anti.lattice, -2).empty();
  }
  return c;
}

WeightedGraph enriques_quotient_graph(const IntMatrix& classes, const Lattice& S, const Perm& eps) {
  std::vector<int> reps;
  for (int l = 0; l < int(classes.rows()); ++l) {
    int m = eps[std::size_t(l)];
    if (m == l) throw std::invalid_argument("enriques_quotient_graph: a curve is fixed");
    if (S.pair(IntVector(classes.row(l)), IntVector(classes.row(m))) != 0)
      throw std::invalid_argument("enriques_quotient_graph: a curve meets its image");
    if (l < m) reps.push_back(l);
  }
  WeightedGraph q(int(reps.size()));
  std::vector<std::string> labels;
  for (int l : reps) labels.push_back("L" + std::to_string(l) + "+L" + std::to_string(eps[std::size_t(l)]));
  q.set_labels(labels);
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = i + 1; j < reps.size(); ++j) {
      IntVector a = classes.row(reps[i]) + classes.row(eps[std::size_t(reps[i])]);
      IntVector b = classes.row(reps[j]) + classes.row(eps[std::size_t(reps[j])]);
      Int x = S.pair(a, b);
      if (x % 2 != 0 || x < 0) throw std::logic_error("enriques_quotient_graph: odd or negative intersection");
      if (x != 0) q.set(int(i), int(j), int((x / 2).get()));
    }
  return q;
}

const EnriquesScan& enriques_scan() {
  static const EnriquesScan scan = [] {
    EnriquesScan out;
    const AutX0& a = aut_x0_h0();
    const AutX0Fibre& fb = aut_x0_f();
    const L40Data& d = l40();
    for (auto& p : a.elements) {
      if (perm_is_identity(p) || !perm_is_identity(perm_mul(p, p))) continue;
      ++out.involutions;
      EnriquesCertificate c = enriques_test(d.s0, a.isometry(p));
      c.perm = p;
      if (c.passes()) out.passing.push_back(std::move(c));
    }
    if (out.passing.empty()) return out;
    std::set<Perm> conj, passing;
    for (auto& c : out.passing) passing.insert(c.perm);
    for (auto& g : a.elements) conj.insert(perm_mul(perm_mul(perm_inv(g), out.passing[0].perm), g));
    out.conjugate = conj == passing;
    out.in_kernel = true;
    out.fibre_pattern = true;
    out.disjoint_from_image = true;
    for (auto& c : out.passing) {
      if (!std::binary_search(a.kernel.begin(), a.kernel.end(), c.perm)) out.in_kernel = false;
      int fixed = 0;
      for (auto& b : fb.blocks) {
        std::set<int> img;
        for (int l : b) img.insert(c.perm[std::size_t(l)]);
        if (img != std::set<int>(b.begin(), b.end())) continue;
        ++fixed;
        if (c.perm[std::size_t(b[0])] != b[2] || c.perm[std::size_t(b[1])] != b[3]) out.fibre_pattern = false;
      }
      out.fixed_blocks.push_back(fixed);
      for (int l = 0; l < 40; ++l)
        if (c.perm[std::size_t(l)] == l ||
            d.s0.pair(IntVector(d.classes.row(l)), IntVector(d.classes.row(c.perm[std::size_t(l)]))) != 0)
          out.disjoint_from_image = false;
    }
    if (out.disjoint_from_image) {
      out.quotient = enriques_quotient_graph(d.classes, d.s0, out.passing[0].perm);
      GraphLattice gl = lattice_from_graph(out.quotient);
      out.quotient_lattice = gl.lattice;
      out.quotient_disc = DiscriminantForm(gl.lattice).describe();
    }
    return out;
  }();
  return scan;
}

const Eps3Report& eps3_analysis() {
  static const Eps3Report rep = [] {
    Eps3Report out;
    const SpecializationReport& sp = specialization_analysis();
    const EnriquesScan& en = enriques_scan();
    const AutX0& a = aut_x0_h0();
    const L40Data& d = l40();
    const NS3& ns = ns3();
    const Lattice& S3 = ns.lattice;
    std::map<std::vector<Int>, const EnriquesCertificate*> eps;
    for (auto& c : en.passing) {
      IntMatrix m = a.isometry(c.perm);
      eps[std::vector<Int>(m.data(), m.data() + m.size())] = &c;
    }
    const IntVector& h3 = ns.h3;
    const Chamber& D3 = chamber_x3().chamber;
    const IntVector& u1 = D3.walls[std::size_t(sp.perp_walls[0])].v;
    const IntVector& u2 = D3.walls[std::size_t(sp.perp_walls[1])].v;
    IntMatrix id = IntMatrix::Identity(22, 22);
    const EnriquesCertificate* best_eps = nullptr;
    for (auto& g : sp.aut_d0) {
      if (IntMatrix(g * g) != id) continue;
      auto r = restrict_to_s0(g);
      auto it = eps.find(std::vector<Int>(r->data(), r->data() + r->size()));
      if (it == eps.end()) continue;
      ++out.candidates;
      // which chamber around D0 is D3^g: beyond both P0-walls means the fourth
      RatVector x = D3.interior * convert<Rational>(g);
      IntVector xi = clear_denominators(x);
      bool fourth = u1.dot(xi) < 0 && u2.dot(xi) < 0;
      if (!fourth || best_eps) continue;
      out.eps3 = g;
      out.degree = S3.pair(h3, IntVector(h3 * g));
      out.fourth_chamber = true;
      best_eps = it->second;
    }
    if (!best_eps) return out;
    const IntMatrix* best = &out.eps3;
    const AutX0Fibre& fb = aut_x0_f();
    const Perm& p = best_eps->perm;
    out.fibre_pattern = true;
    for (auto& b : fb.blocks) {
      std::set<int> img;
      for (int l : b) img.insert(p[std::size_t(l)]);
      if (img != std::set<int>(b.begin(), b.end())) continue;
      ++out.fixed_blocks;
      if (p[std::size_t(b[0])] != b[2] || p[std::size_t(b[1])] != b[3]) out.fibre_pattern = false;
    }
    // the pull-backs C + C^eps3 in S3: C runs over the L40 lines
    std::unordered_map<IntVector, int, VecHash, VecEq> line_of;
    for (Index l = 0; l < ns.classes.rows(); ++l) line_of.emplace(IntVector(ns.classes.row(l)), int(l));
    IntMatrix cls(40, 22);
    out.pullbacks_are_lines = true;
    for (int l = 0; l < 40; ++l) {
      cls.row(l) = d.classes.row(l) * d.rho;
      if (!line_of.count(IntVector(cls.row(l)))) out.pullbacks_are_lines = false;
    }
    Perm p3(40, -1);
    std::unordered_map<IntVector, int, VecHash, VecEq> pos;
    for (int l = 0; l < 40; ++l) pos.emplace(IntVector(cls.row(l)), l);
    for (int l = 0; l < 40; ++l) {
      auto it = pos.find(IntVector(IntVector(cls.row(l)) * *best));
      if (it == pos.end()) out.pullbacks_are_lines = false;
      else p3[std::size_t(l)] = it->second;
    }
    if (out.pullbacks_are_lines) {
      WeightedGraph q3 = enriques_quotient_graph(cls, S3, p3);
      out.quotient_isomorphic = find_isomorphism(q3, en.quotient).has_value();
    }
    return out;
  }();
  return rep;
}

}  // namespace k3
