#include "k3/fermat.hpp"

#include "k3/enumerate.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

namespace k3 {

using Index = Eigen::Index;

GF9 GF9::inv() const {
  for (int k = 1; k < 9; ++k)
    if (*this * from_index(k) == GF9(1, 0)) return from_index(k);
  throw std::domain_error("GF9: inverse of zero");
}

GF9 GF9::pow(int e) const {
  GF9 r(1, 0);
  for (int k = 0; k < e; ++k) r *= *this;
  return r;
}

std::string GF9::str() const {
  static const char* part[] = {"0", "1", "-1"};
  if (im() == 0) return part[re()];
  std::string imag = im() == 1 ? "i" : "-i";
  if (re() == 0) return imag;
  return std::string(part[re()]) + (im() == 1 ? "+i" : "-i");
}

Point3 normalize(const Point3& p) {
  std::size_t k = 0;
  while (k < 4 && p[k].is_zero()) ++k;
  if (k == 4) throw std::invalid_argument("normalize: zero vector");
  GF9 s = p[k].inv();
  Point3 q;
  for (std::size_t j = 0; j < 4; ++j) q[j] = p[j] * s;
  return q;
}

bool on_fermat(const Point3& p) {
  GF9 s;
  for (auto& x : p) s += x.pow(4);
  return s.is_zero();
}

std::string point_string(const Point3& p) {
  std::string s = "[";
  for (std::size_t j = 0; j < 4; ++j) s += (j ? ":" : "") + p[j].str();
  return s + "]";
}

int FermatLines::point_index(const Point3& p) const {
  Point3 q = normalize(p);
  auto key = [](const Point3& x) {
    std::array<int, 4> k{};
    for (std::size_t j = 0; j < 4; ++j) k[j] = x[j].index();
    return k;
  };
  auto kq = key(q);
  auto it = std::lower_bound(points.begin(), points.end(), kq, [&](const Point3& a, const std::array<int, 4>& b) { return key(a) < b; });
  if (it == points.end() || key(*it) != kq) return -1;
  return int(it - points.begin());
}

std::string FermatLines::line_string(int l) const {
  auto c = lines[std::size_t(l)].canonical();
  return point_string(points[std::size_t(c[0])]) + "-" + point_string(points[std::size_t(c[1])]);
}

namespace {

FermatLines build_lines() {
  FermatLines fl;
  // lexicographic in (x1,x2,x3,x4) with coordinates ordered by index
  for (int a = 0; a < 9; ++a)
    for (int b = 0; b < 9; ++b)
      for (int c = 0; c < 9; ++c)
        for (int d = 0; d < 9; ++d) {
          Point3 p{GF9::from_index(a), GF9::from_index(b), GF9::from_index(c), GF9::from_index(d)};
          if (a + b + c + d == 0 || normalize(p) != p) continue;
          if (on_fermat(p)) fl.points.push_back(p);
        }
  const int np = int(fl.points.size());
  fl.line_through.assign(std::size_t(np), std::vector<int>(std::size_t(np), -1));
  for (int p = 0; p < np; ++p)
    for (int q = p + 1; q < np; ++q) {
      if (fl.line_of(p, q) >= 0) continue;
      std::vector<int> pts{p, q};
      bool ok = true;
      for (int t = 0; t < 9 && ok; ++t) {
        GF9 s = GF9::from_index(t);
        if (s.is_zero()) continue;
        Point3 x;
        for (std::size_t j = 0; j < 4; ++j) x[j] = fl.points[std::size_t(p)][j] + s * fl.points[std::size_t(q)][j];
        if (!on_fermat(x)) ok = false;
        else pts.push_back(fl.point_index(x));
      }
      if (!ok) continue;
      std::sort(pts.begin(), pts.end());
      if (pts.size() != 10 || std::adjacent_find(pts.begin(), pts.end()) != pts.end())
        throw std::logic_error("fermat_lines: degenerate line");
      FermatLine line;
      std::copy(pts.begin(), pts.end(), line.points.begin());
      const int id = int(fl.lines.size());
      for (int u : pts)
        for (int v : pts)
          if (u != v) fl.line_through[std::size_t(u)][std::size_t(v)] = id;
      fl.lines.push_back(line);
    }
  return fl;
}

}  // namespace

const FermatLines& fermat_lines() {
  static const FermatLines fl = build_lines();
  return fl;
}

const WeightedGraph& dual_graph_112() {
  static const WeightedGraph g = [] {
    const auto& fl = fermat_lines();
    const int n = int(fl.lines.size());
    std::vector<std::string> labels;
    for (int l = 0; l < n; ++l) labels.push_back(fl.line_label(l));
    WeightedGraph out(n, labels);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        auto& pa = fl.lines[std::size_t(a)].points;
        auto& pb = fl.lines[std::size_t(b)].points;
        std::vector<int> common;
        std::set_intersection(pa.begin(), pa.end(), pb.begin(), pb.end(), std::back_inserter(common));
        if (common.size() > 1) throw std::logic_error("dual_graph_112: lines share two points");
        if (!common.empty()) out.set(a, b, 1);
      }
    return out;
  }();
  return g;
}

const NS3& ns3() {
  static const NS3 s = [] {
    GraphLattice gl = lattice_from_graph(dual_graph_112());
    if (gl.basis_vertices.size() != 22) throw std::logic_error("ns3: no basis of 22 lines found");
    NS3 out;
    out.lattice = gl.lattice;
    out.basis_lines = gl.basis_vertices;
    out.classes = gl.vertex_images;
    if (out.lattice.det() != -9) throw std::logic_error("ns3: determinant is not -9");
    IntVector sum = out.classes.colwise().sum();
    for (Index k = 0; k < sum.size(); ++k)
      if (sum[k] % 28 != 0) throw std::logic_error("ns3: sum of lines not divisible by 28");
    out.h3 = sum / Int(28);
    return out;
  }();
  return s;
}

int line_by_equations(const std::array<GF9, 4>& e1, const std::array<GF9, 4>& e2) {
  const auto& fl = fermat_lines();
  for (std::size_t l = 0; l < fl.lines.size(); ++l) {
    bool ok = true;
    for (int p : fl.lines[l].points) {
      GF9 s1, s2;
      for (std::size_t j = 0; j < 4; ++j)
        s1 += e1[j] * fl.points[std::size_t(p)][j], s2 += e2[j] * fl.points[std::size_t(p)][j];
      if (!s1.is_zero() || !s2.is_zero()) ok = false;
    }
    if (ok) return int(l);
  }
  return -1;
}

int zero_section_line() {
  const GF9 one(1, 0), i = GF9::i(), zero;
  return line_by_equations({one, zero, i, -one}, {zero, one, one, -i});
}

// ---- PGU_4

bool is_unitary(const Mat4& g) {
  // (g^T conj(g))_{jk} = sum_m g_{mj} conj(g_{mk})
  GF9 c;
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t k = 0; k < 4; ++k) {
      GF9 s;
      for (std::size_t m = 0; m < 4; ++m) s += g[m][j] * g[m][k].conj();
      if (j == k) {
        if (j == 0) c = s;
        if (s != c) return false;
      } else if (!s.is_zero()) {
        return false;
      }
    }
  return !c.is_zero();
}

namespace {
Perm point_map_to_lines(const std::function<Point3(const Point3&)>& f) {
  const auto& fl = fermat_lines();
  Perm out(fl.lines.size());
  for (std::size_t l = 0; l < fl.lines.size(); ++l) {
    auto c = fl.lines[l].canonical();
    int p = fl.point_index(f(fl.points[std::size_t(c[0])])), q = fl.point_index(f(fl.points[std::size_t(c[1])]));
    if (p < 0 || q < 0) throw std::invalid_argument("line_permutation: map does not preserve the surface");
    int img = fl.line_of(p, q);
    if (img < 0) throw std::invalid_argument("line_permutation: map does not preserve the lines");
    out[l] = img;
  }
  std::vector<int> check = out;
  std::sort(check.begin(), check.end());
  if (std::adjacent_find(check.begin(), check.end()) != check.end()) throw std::invalid_argument("line_permutation: not a bijection");
  return out;
}
}  // namespace

Perm line_permutation(const Mat4& g) {
  if (!is_unitary(g)) throw std::invalid_argument("line_permutation: matrix is not unitary");
  return point_map_to_lines([&](const Point3& x) {
    Point3 y;
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) y[r] += g[r][c] * x[c];
    return y;
  });
}

Perm frobenius_line_permutation() {
  return point_map_to_lines([](const Point3& x) {
    Point3 y;
    for (std::size_t j = 0; j < 4; ++j) y[j] = x[j].conj();
    return y;
  });
}

IntMatrix isometry_from_line_perm(const NS3& s, const Perm& p) {
  const Index r = s.lattice.rank();
  IntMatrix m(r, r);
  for (Index k = 0; k < r; ++k) m.row(k) = s.classes.row(p[std::size_t(s.basis_lines[std::size_t(k)])]);
  return m;
}

const Pgu4& pgu4() {
  static const Pgu4 g = [] {
    const Integer target = 13063680;
    std::vector<Mat4> candidates;
    auto ident = [] {
      Mat4 m{};
      for (std::size_t j = 0; j < 4; ++j) m[j][j] = GF9(1, 0);
      return m;
    };
    auto perm_matrix = [&](std::array<int, 4> s) {
      Mat4 m{};
      for (std::size_t j = 0; j < 4; ++j) m[std::size_t(s[j])][j] = GF9(1, 0);
      return m;
    };
    candidates.push_back(perm_matrix({1, 0, 2, 3}));
    candidates.push_back(perm_matrix({1, 2, 3, 0}));
    {
      Mat4 d = ident();
      d[0][0] = GF9::i();
      candidates.push_back(d);
    }
    // 2x2 unitary blocks on the first two coordinates
    for (int a = 0; a < 9; ++a)
      for (int b = 0; b < 9; ++b)
        for (int c = 0; c < 9; ++c)
          for (int d = 0; d < 9; ++d) {
            Mat4 m = ident();
            m[0][0] = GF9::from_index(a), m[0][1] = GF9::from_index(b);
            m[1][0] = GF9::from_index(c), m[1][1] = GF9::from_index(d);
            if (is_unitary(m)) candidates.push_back(m);
          }
    Pgu4 out;
    out.group = PermGroup(112, {});
    for (auto& m : candidates) {
      if (out.group.order() == target) break;
      Perm p = line_permutation(m);
      if (out.group.add_generator(p)) out.matrices.push_back(m), out.line_perms.push_back(p);
    }
    if (out.group.order() != target) throw std::logic_error("pgu4: generators do not reach the full group");
    for (auto& p : out.line_perms) out.isometries.push_back(isometry_from_line_perm(ns3(), p));
    return out;
  }();
  return g;
}

// ---- the fibration

std::string sigma_value(const Point3& x) {
  const GF9 i = GF9::i();
  GF9 a = x[2] * x[2] - i * x[3] * x[3], b = x[0] * x[0] + i * x[1] * x[1];
  if (a.is_zero() && b.is_zero()) a = -(x[0] * x[0]) + i * x[1] * x[1], b = x[2] * x[2] + i * x[3] * x[3];
  if (a.is_zero() && b.is_zero()) throw std::logic_error("sigma_value: base point of the pencil");
  if (b.is_zero()) return "inf";
  return (a * b.inv()).str();
}

namespace {
int value_rank(const std::string& v) {
  if (v == "inf") return 100;
  for (int k = 0; k < 9; ++k)
    if (GF9::from_index(k).str() == v) return k;
  return 200;
}
}  // namespace

const Fibration& fermat_fibration() {
  static const Fibration f = [] {
    const auto& fl = fermat_lines();
    const auto& g = dual_graph_112();
    std::map<int, std::vector<int>> by_value;
    std::map<int, std::string> names;
    Fibration out;
    for (std::size_t l = 0; l < fl.lines.size(); ++l) {
      std::set<std::string> vals;
      for (int p : fl.lines[l].points) vals.insert(sigma_value(fl.points[std::size_t(p)]));
      if (vals.size() == 1) {
        int r = value_rank(*vals.begin());
        by_value[r].push_back(int(l));
        names[r] = *vals.begin();
      } else if (vals.size() == 10) {
        out.sections.push_back(int(l));
      } else {
        // degree two onto the base: an involution pairs up the F_9-points,
        // so the image has fewer than ten points
        out.bisections.push_back(int(l));
      }
    }
    for (auto& [r, ls] : by_value) {
      if (ls.size() != 4) throw std::logic_error("fermat_fibration: fibre without four lines");
      // cyclic order around the quadrangle
      std::array<int, 4> cyc{ls[0], -1, -1, -1};
      std::vector<int> rest(ls.begin() + 1, ls.end());
      for (std::size_t k = 1; k < 4; ++k) {
        auto it = std::find_if(rest.begin(), rest.end(), [&](int m) { return g.eta(cyc[k - 1], m) > 0; });
        if (it == rest.end()) throw std::logic_error("fermat_fibration: fibre is not a quadrangle");
        cyc[k] = *it;
        rest.erase(it);
      }
      if (g.eta(cyc[3], cyc[0]) == 0 || g.eta(cyc[0], cyc[2]) > 0 || g.eta(cyc[1], cyc[3]) > 0)
        throw std::logic_error("fermat_fibration: fibre is not a quadrangle");
      out.fibers.push_back(cyc);
      out.values.push_back(names[r]);
    }
    return out;
  }();
  return f;
}

namespace {
IntMatrix trivial_lattice_basis(const NS3& s, const Fibration& f, int z) {
  IntMatrix gens(1 + 4 * Index(f.fibers.size()), s.lattice.rank());
  gens.row(0) = s.line_class(z);
  Index k = 1;
  for (auto& fib : f.fibers)
    for (int l : fib) gens.row(k++) = s.line_class(l);
  return row_basis(gens);
}
}  // namespace

std::vector<int> torsion_sections(const NS3& s, const Fibration& f, int z) {
  IntMatrix closure = saturate(trivial_lattice_basis(s, f, z));
  std::vector<int> out;
  for (int l : f.sections)
    if (solve_integer(closure, s.line_class(l))) out.push_back(l);
  return out;
}

std::vector<Integer> torsion_group_invariants(const NS3& s, const Fibration& f, int z) {
  IntMatrix triv = trivial_lattice_basis(s, f, z);
  IntMatrix closure = saturate(triv);
  IntMatrix coords(triv.rows(), closure.rows());
  for (Index k = 0; k < triv.rows(); ++k) coords.row(k) = *solve_integer(closure, IntVector(triv.row(k)));
  std::vector<Integer> out;
  for (auto& d : elementary_divisors(coords))
    if (d != 1) out.push_back(d);
  return out;
}

const L40Data& l40() {
  static const L40Data d = [] {
    const NS3& s = ns3();
    const Fibration& f = fermat_fibration();
    L40Data out;
    for (auto& fib : f.fibers) out.lines.insert(out.lines.end(), fib.begin(), fib.end());
    auto tors = torsion_sections(s, f, zero_section_line());
    out.lines.insert(out.lines.end(), tors.begin(), tors.end());
    out.graph = dual_graph_112().induced(out.lines);
    GraphLattice gl = lattice_from_graph(out.graph);
    if (gl.basis_vertices.empty()) throw std::logic_error("l40: no basis among the 40 lines");
    out.s0 = gl.lattice;
    out.classes = gl.vertex_images;
    out.rho.resize(out.s0.rank(), s.lattice.rank());
    for (Index k = 0; k < out.s0.rank(); ++k)
      out.rho.row(k) = s.line_class(out.lines[std::size_t(gl.basis_vertices[std::size_t(k)])]);
    if (out.rho * s.lattice.gram() * out.rho.transpose() != out.s0.gram()) throw std::logic_error("l40: rho is not an isometry");
    IntVector sum = out.classes.colwise().sum();
    for (Index k = 0; k < sum.size(); ++k)
      if (sum[k] % 2 != 0) throw std::logic_error("l40: sum of classes not divisible by 2");
    out.h0 = sum / Int(2);
    return out;
  }();
  return d;
}

AlphaCounts count_alpha_tuples() {
  const auto& g = dual_graph_112();
  const int n = g.size();
  AlphaCounts c;
  bool have_example = false;
  for (int l0 = 0; l0 < n; ++l0)
    for (int l2 = 0; l2 < n; ++l2) {
      if (l2 == l0 || g.eta(l0, l2) > 0) continue;
      std::vector<int> common;
      for (int x = 0; x < n; ++x)
        if (g.eta(l0, x) > 0 && g.eta(l2, x) > 0) common.push_back(x);
      for (int l1 : common)
        for (int l3 : common) {
          if (l1 == l3 || g.eta(l1, l3) > 0) continue;
          for (int z = 0; z < n; ++z) {
            if (z == l0 || z == l1 || z == l2 || z == l3) continue;
            if (g.eta(z, l0) == 0 || g.eta(z, l1) > 0 || g.eta(z, l2) > 0 || g.eta(z, l3) > 0) continue;
            if (!have_example) c.example = {z, l0, l1, l2, l3}, have_example = true;
            ++c.tuples;
          }
        }
    }
  const Pgu4& G = pgu4();
  c.stabilizer_order = G.group.pointwise_stabilizer(std::vector<int>(c.example.begin(), c.example.end())).order();

  const L40Data& d = l40();
  std::vector<int> start = d.lines;
  std::sort(start.begin(), start.end());
  auto act = [&](const std::vector<int>& set, std::size_t s) {
    std::vector<int> img;
    img.reserve(set.size());
    for (int l : set) img.push_back(G.line_perms[s][std::size_t(l)]);
    std::sort(img.begin(), img.end());
    return img;
  };
  OrbitTree<std::vector<int>, PermHash> tree(start, G.line_perms.size(), act);
  c.l40_orbit = tree.size();
  c.l40_stabilizer = stabilizer_from_orbit(tree, G.line_perms, act, 112).order();
  c.l40_quadrangles = quadrangles(d.graph).size();
  return c;
}

}  // namespace k3
