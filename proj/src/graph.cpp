#include "k3/graph.hpp"

#include "json.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace k3 {

using Index = Eigen::Index;

WeightedGraph::WeightedGraph(int n, std::vector<std::string> labels)
    : n_(n), eta_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0) {
  if (labels.empty())
    for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  set_labels(std::move(labels));
}

void WeightedGraph::set_labels(std::vector<std::string> l) {
  if (int(l.size()) != n_) throw std::invalid_argument("WeightedGraph: wrong number of labels");
  labels_ = std::move(l);
}

void WeightedGraph::set(int i, int j, int m) {
  if (i == j) throw std::invalid_argument("WeightedGraph: no self-pairs");
  if (m < 0) throw std::invalid_argument("WeightedGraph: negative multiplicity");
  eta_[std::size_t(i) * std::size_t(n_) + std::size_t(j)] = m;
  eta_[std::size_t(j) * std::size_t(n_) + std::size_t(i)] = m;
}

std::vector<int> WeightedGraph::neighbors(int i) const {
  std::vector<int> out;
  for (int j = 0; j < n_; ++j)
    if (eta(i, j) > 0) out.push_back(j);
  return out;
}

int WeightedGraph::degree(int i) const {
  int d = 0;
  for (int j = 0; j < n_; ++j) d += eta(i, j);
  return d;
}

std::vector<std::array<int, 3>> WeightedGraph::edges() const {
  std::vector<std::array<int, 3>> out;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (eta(i, j) > 0) out.push_back({i, j, eta(i, j)});
  return out;
}

bool WeightedGraph::is_simple() const {
  return std::all_of(eta_.begin(), eta_.end(), [](int m) { return m <= 1; });
}

WeightedGraph WeightedGraph::induced(const std::vector<int>& vs) const {
  std::vector<std::string> l;
  for (int v : vs) l.push_back(labels_[std::size_t(v)]);
  WeightedGraph g(int(vs.size()), l);
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j) g.set(int(i), int(j), eta(vs[i], vs[j]));
  return g;
}

IntMatrix WeightedGraph::gram() const {
  IntMatrix g(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) g(i, j) = i == j ? Int(-2) : Int(eta(i, j));
  return g;
}

std::string WeightedGraph::to_json() const {
  nlohmann::json j;
  j["vertices"] = labels_;
  auto e = nlohmann::json::array();
  for (auto& [a, b, m] : edges()) e.push_back({a, b, m});
  j["edges"] = e;
  return j.dump();
}

WeightedGraph WeightedGraph::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  auto labels = j.at("vertices").get<std::vector<std::string>>();
  WeightedGraph g(int(labels.size()), labels);
  for (auto& e : j.at("edges")) g.set(e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>());
  return g;
}

std::string WeightedGraph::to_dot(const std::string& name) const {
  std::ostringstream os;
  os << "graph " << name << " {\n";
  for (int i = 0; i < n_; ++i) os << "  " << i << " [label=\"" << labels_[std::size_t(i)] << "\"];\n";
  for (auto& [a, b, m] : edges()) {
    os << "  " << a << " -- " << b;
    if (m > 1) os << " [label=\"" << m << "\", penwidth=" << m << "]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

// ---- graph lattices

GraphLattice lattice_from_graph(const WeightedGraph& g) {
  const IntMatrix G = g.gram();
  const Index n = G.rows();
  HermiteForm hf = hermite_normal_form(convert<Integer>(G));
  const Index r = hf.rank();
  IntMatrix B = convert<Int>(BigMatrix(hf.H.topRows(r)));
  IntMatrix Y = convert<Int>(BigMatrix(hf.U.topRows(r)));
  // the quotient Z^V/Ker is identified with the row space of G via x -> xG
  IntMatrix images(n, r);
  for (Index i = 0; i < n; ++i) {
    auto c = solve_integer(B, IntVector(G.row(i)));
    if (!c) throw std::logic_error("lattice_from_graph: vertex image outside the row space");
    images.row(i) = *c;
  }
  GraphLattice out;
  out.lattice = Lattice(IntMatrix(Y * G * Y.transpose()));
  out.vertex_images = images;

  // prefer a basis made of vertices: greedy choice, then swaps lowering |det|
  std::vector<int> chosen;
  {
    IntMatrix acc(0, r);
    for (Index i = 0; i < n && Index(chosen.size()) < r; ++i) {
      IntMatrix t(acc.rows() + 1, r);
      t << acc, images.row(i);
      if (rank(t) > acc.rows()) acc = t, chosen.push_back(int(i));
    }
  }
  auto det_of = [&](const std::vector<int>& s) {
    IntMatrix m(r, r);
    for (Index k = 0; k < r; ++k) m.row(k) = images.row(s[std::size_t(k)]);
    return Integer(abs(determinant(m)));
  };
  if (Index(chosen.size()) == r && r > 0) {
    Integer best = det_of(chosen);
    bool improved = true;
    while (best != 1 && improved) {
      improved = false;
      for (Index u = 0; u < n && !improved; ++u) {
        if (std::find(chosen.begin(), chosen.end(), int(u)) != chosen.end()) continue;
        for (std::size_t k = 0; k < chosen.size() && !improved; ++k) {
          auto trial = chosen;
          trial[k] = int(u);
          Integer d = det_of(trial);
          if (d != 0 && d < best) chosen = trial, best = d, improved = true;
        }
      }
    }
    if (best == 1) {
      IntMatrix c(r, r);
      for (Index k = 0; k < r; ++k) c.row(k) = images.row(chosen[std::size_t(k)]);
      IntMatrix cinv = convert<Int>(inverse(c));
      std::vector<std::string> labels;
      for (int v : chosen) labels.push_back(g.label(v));
      IntMatrix sub(r, r);
      for (Index a = 0; a < r; ++a)
        for (Index b = 0; b < r; ++b) sub(a, b) = G(chosen[std::size_t(a)], chosen[std::size_t(b)]);
      out.lattice = Lattice(sub, labels);
      out.vertex_images = images * cinv;
      out.basis_vertices = chosen;
    }
  }
  return out;
}

bool is_graph_map(const WeightedGraph& a, const WeightedGraph& b, const GraphMap& f) {
  if (int(f.vertex_map.size()) != a.size()) return false;
  for (int v : f.vertex_map)
    if (v < 0 || v >= b.size()) return false;
  for (auto& [i, j, m] : a.edges()) {
    (void)m;
    if (f(i) == f(j) || b.eta(f(i), f(j)) == 0) return false;
  }
  return true;
}

// ---- colour refinement

namespace {

struct PairRefiner {
  const WeightedGraph& a;
  const WeightedGraph& b;
  const bool same;

  // returns the number of colours, or -1 when the two colourings disagree
  int refine(std::vector<int>& ca, std::vector<int>& cb) const {
    const int n = a.size();
    int ncol = -1;
    for (;;) {
      std::map<std::vector<int>, int> ids;
      auto sig = [&](const WeightedGraph& g, const std::vector<int>& c, int v) {
        std::vector<std::pair<int, int>> nb;
        for (int u = 0; u < n; ++u)
          if (int m = g.eta(v, u); m > 0) nb.emplace_back(c[std::size_t(u)], m);
        std::sort(nb.begin(), nb.end());
        std::vector<int> s{c[std::size_t(v)]};
        for (auto& [x, m] : nb) s.push_back(x), s.push_back(m);
        return s;
      };
      std::vector<std::vector<int>> sa(static_cast<std::size_t>(n)), sb(static_cast<std::size_t>(n));
      for (int v = 0; v < n; ++v) {
        sa[std::size_t(v)] = sig(a, ca, v);
        ids.emplace(sa[std::size_t(v)], 0);
        if (!same) {
          sb[std::size_t(v)] = sig(b, cb, v);
          ids.emplace(sb[std::size_t(v)], 0);
        }
      }
      int k = 0;
      for (auto& [s, id] : ids) id = k++;
      std::vector<int> counts(std::size_t(k), 0);
      for (int v = 0; v < n; ++v) {
        ca[std::size_t(v)] = ids.at(sa[std::size_t(v)]);
        ++counts[std::size_t(ca[std::size_t(v)])];
      }
      if (same) {
        cb = ca;
      } else {
        for (int v = 0; v < n; ++v) {
          auto it = ids.find(sb[std::size_t(v)]);
          cb[std::size_t(v)] = it->second;
          if (--counts[std::size_t(it->second)] < 0) return -1;
        }
        for (int c : counts)
          if (c != 0) return -1;
      }
      if (k == ncol) return k;
      ncol = k;
    }
  }

  // smallest non-singleton cell (lowest colour on ties), or -1 when discrete
  static int target_cell(const std::vector<int>& c, int ncol) {
    std::vector<int> size(std::size_t(ncol), 0);
    for (int x : c) ++size[std::size_t(x)];
    int best = -1;
    for (int x = 0; x < ncol; ++x)
      if (size[std::size_t(x)] > 1 && (best < 0 || size[std::size_t(x)] < size[std::size_t(best)])) best = x;
    return best;
  }

  bool verify(const std::vector<int>& f) const {
    const int n = a.size();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (a.eta(i, j) != b.eta(f[std::size_t(i)], f[std::size_t(j)])) return false;
    return true;
  }

  // Depth-first over individualisations; cb returns false to stop. With a
  // known group of colour-preserving automorphisms of b, only one target per
  // orbit of the stabilizer of the earlier targets is tried (find-one mode).
  bool search(std::vector<int> ca, std::vector<int> cb, const std::function<bool(const std::vector<int>&)>& cb_leaf,
              const PermGroup* aut_b = nullptr, std::vector<int> fixed_b = {}) const {
    const int ncol = refine(ca, cb);
    if (ncol < 0) return true;
    const int n = a.size();
    const int cell = target_cell(ca, ncol);
    if (cell < 0) {
      std::vector<int> inv(static_cast<std::size_t>(ncol)), f(static_cast<std::size_t>(n));
      for (int w = 0; w < n; ++w) inv[std::size_t(cb[std::size_t(w)])] = w;
      for (int v = 0; v < n; ++v) f[std::size_t(v)] = inv[std::size_t(ca[std::size_t(v)])];
      if (verify(f)) return cb_leaf(f);
      return true;
    }
    int v = 0;
    while (ca[std::size_t(v)] != cell) ++v;
    std::vector<char> covered(static_cast<std::size_t>(n), 0);
    std::optional<PermGroup> stab;
    if (aut_b) stab = fixed_b.empty() ? *aut_b : aut_b->pointwise_stabilizer(fixed_b);
    for (int w = 0; w < n; ++w) {
      if (cb[std::size_t(w)] != cell || covered[std::size_t(w)]) continue;
      if (stab)
        for (int x : stab->orbit(w)) covered[std::size_t(x)] = 1;
      auto ca2 = ca, cb2 = cb;
      ca2[std::size_t(v)] = ncol, cb2[std::size_t(w)] = ncol;
      auto fixed2 = fixed_b;
      if (aut_b) fixed2.push_back(w);
      if (!search(std::move(ca2), std::move(cb2), cb_leaf, aut_b, std::move(fixed2))) return false;
    }
    return true;
  }
};

std::vector<int> initial_colors(const WeightedGraph& g, const std::vector<int>& given) {
  if (!given.empty()) {
    if (int(given.size()) != g.size()) throw std::invalid_argument("graph isomorphism: wrong number of colours");
    return given;
  }
  return std::vector<int>(std::size_t(g.size()), 0);
}

}  // namespace

std::optional<GraphMap> find_isomorphism(const WeightedGraph& a, const WeightedGraph& b, const std::vector<int>& colors_a,
                                         const std::vector<int>& colors_b, const PermGroup* aut_b) {
  if (a.size() != b.size()) return std::nullopt;
  PairRefiner pr{a, b, false};
  std::optional<GraphMap> out;
  pr.search(initial_colors(a, colors_a), initial_colors(b, colors_b), [&](const std::vector<int>& f) {
    out = GraphMap{f};
    return false;
  }, aut_b);
  return out;
}

std::vector<GraphMap> isomorphisms(const WeightedGraph& a, const WeightedGraph& b, const std::vector<int>& colors_a,
                                   const std::vector<int>& colors_b, std::size_t cap) {
  std::vector<GraphMap> out;
  if (a.size() != b.size()) return out;
  PairRefiner pr{a, b, false};
  pr.search(initial_colors(a, colors_a), initial_colors(b, colors_b), [&](const std::vector<int>& f) {
    if (out.size() >= cap) throw std::length_error("isomorphisms: cap exceeded");
    out.push_back(GraphMap{f});
    return true;
  });
  return out;
}

GraphAutomorphisms automorphism_group(const WeightedGraph& g, const std::vector<int>& colors) {
  const int n = g.size();
  PairRefiner self{g, g, true}, pair{g, g, false};
  // leftmost path of the search tree: base points and the colourings above them
  std::vector<std::vector<int>> path_colors;
  std::vector<int> base, cells, ncols;
  std::vector<int> c = initial_colors(g, colors), dummy = c;
  for (;;) {
    int ncol = self.refine(c, dummy);
    int cell = PairRefiner::target_cell(c, ncol);
    if (cell < 0) break;
    int v = 0;
    while (c[std::size_t(v)] != cell) ++v;
    path_colors.push_back(c), base.push_back(v), cells.push_back(cell), ncols.push_back(ncol);
    c[std::size_t(v)] = ncol;
    dummy = c;
  }
  std::vector<Perm> gens;
  Integer order = 1;
  for (std::size_t k = base.size(); k-- > 0;) {
    const auto& ck = path_colors[k];
    auto orbit_of = [&](int p) {
      std::vector<char> seen(static_cast<std::size_t>(n), 0);
      std::vector<int> orb{p};
      seen[std::size_t(p)] = 1;
      for (std::size_t i = 0; i < orb.size(); ++i)
        for (auto& s : gens)
          if (int q = s[std::size_t(orb[i])]; !seen[std::size_t(q)]) seen[std::size_t(q)] = 1, orb.push_back(q);
      return std::make_pair(orb, seen);
    };
    auto [orb, in_orbit] = orbit_of(base[k]);
    std::vector<char> rejected(static_cast<std::size_t>(n), 0);
    for (int w = 0; w < n; ++w) {
      if (ck[std::size_t(w)] != cells[k] || in_orbit[std::size_t(w)] || rejected[std::size_t(w)]) continue;
      auto ca = ck, cb = ck;
      ca[std::size_t(base[k])] = ncols[k], cb[std::size_t(w)] = ncols[k];
      std::optional<Perm> found;
      pair.search(ca, cb, [&](const std::vector<int>& f) {
        found = f;
        return false;
      });
      if (found) {
        gens.push_back(*found);
        std::tie(orb, in_orbit) = orbit_of(base[k]);
      } else {
        // nothing maps base[k] into the orbit of w under the current stabilizer
        auto [ow, unused] = orbit_of(w);
        (void)unused;
        for (int x : ow) rejected[std::size_t(x)] = 1;
      }
    }
    order *= Integer(orb.size());
  }
  GraphAutomorphisms out{PermGroup(n, gens, base)};
  if (out.group.order() != order) throw std::logic_error("automorphism_group: orbit product disagrees with Schreier-Sims");
  return out;
}

// ---- Petersen graph, quadrangles

WeightedGraph petersen() {
  std::vector<std::array<int, 2>> pairs;
  std::vector<std::string> labels;
  for (int i = 1; i <= 5; ++i)
    for (int j = i + 1; j <= 5; ++j) pairs.push_back({i, j}), labels.push_back(std::to_string(i) + std::to_string(j));
  WeightedGraph g(10, labels);
  for (int a = 0; a < 10; ++a)
    for (int b = a + 1; b < 10; ++b) {
      auto& p = pairs[std::size_t(a)];
      auto& q = pairs[std::size_t(b)];
      if (p[0] != q[0] && p[0] != q[1] && p[1] != q[0] && p[1] != q[1]) g.set(a, b, 1);
    }
  return g;
}

int girth(const WeightedGraph& g) {
  const int n = g.size();
  int best = 0;
  for (int s = 0; s < n; ++s) {
    std::vector<int> dist(std::size_t(n), -1), par(std::size_t(n), -1);
    std::queue<int> q;
    dist[std::size_t(s)] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int w : g.neighbors(u)) {
        if (dist[std::size_t(w)] < 0) {
          dist[std::size_t(w)] = dist[std::size_t(u)] + 1, par[std::size_t(w)] = u;
          q.push(w);
        } else if (par[std::size_t(u)] != w) {
          int len = dist[std::size_t(u)] + dist[std::size_t(w)] + 1;
          if (best == 0 || len < best) best = len;
        }
      }
    }
  }
  return best;
}

std::vector<std::array<int, 4>> quadrangles(const WeightedGraph& g) {
  const int n = g.size();
  std::set<std::array<int, 4>> found;
  for (int a = 0; a < n; ++a)
    for (int c = a + 1; c < n; ++c) {
      std::vector<int> common;
      for (int x = 0; x < n; ++x)
        if (x != a && x != c && g.eta(a, x) > 0 && g.eta(c, x) > 0) common.push_back(x);
      for (std::size_t i = 0; i < common.size(); ++i)
        for (std::size_t j = i + 1; j < common.size(); ++j) {
          std::array<int, 4> cyc{a, common[i], c, common[j]};
          // rotate to the smallest vertex, then orient so the second entry is the smaller neighbour
          auto m = std::min_element(cyc.begin(), cyc.end()) - cyc.begin();
          std::rotate(cyc.begin(), cyc.begin() + m, cyc.end());
          if (cyc[1] > cyc[3]) std::swap(cyc[1], cyc[3]);
          found.insert(cyc);
        }
    }
  return {found.begin(), found.end()};
}

bool is_qp_covering(const WeightedGraph& q, const GraphMap& gamma) {
  const WeightedGraph p = petersen();
  if (q.size() != 40 || !q.is_simple() || !is_graph_map(q, p, gamma)) return false;
  std::vector<std::vector<int>> fiber(10);
  for (int v = 0; v < q.size(); ++v) fiber[std::size_t(gamma(v))].push_back(v);
  for (auto& f : fiber)
    if (f.size() != 4) return false;
  for (auto& [x, y, m] : p.edges()) {
    (void)m;
    std::vector<int> vs = fiber[std::size_t(x)];
    vs.insert(vs.end(), fiber[std::size_t(y)].begin(), fiber[std::size_t(y)].end());
    WeightedGraph sub = q.induced(vs);
    if (sub.edge_count() != 8) return false;
    for (int v = 0; v < 8; ++v)
      if (sub.degree(v) != 2) return false;
    // 2-regular on 8 vertices: two quadrangles iff every component has 4 vertices
    std::vector<char> seen(8, 0);
    for (int s = 0; s < 8; ++s) {
      if (seen[std::size_t(s)]) continue;
      int count = 0;
      std::vector<int> st{s};
      seen[std::size_t(s)] = 1;
      while (!st.empty()) {
        int u = st.back();
        st.pop_back();
        ++count;
        for (int w : sub.neighbors(u))
          if (!seen[std::size_t(w)]) seen[std::size_t(w)] = 1, st.push_back(w);
      }
      if (count != 4) return false;
    }
  }
  auto qs = quadrangles(q);
  for (std::size_t i = 0; i < qs.size(); ++i)
    for (std::size_t j = i + 1; j < qs.size(); ++j) {
      int common = 0;
      for (int x : qs[i])
        for (int y : qs[j]) common += x == y;
      if (common > 1) return false;
    }
  return true;
}

GraphMap induced_covering(const WeightedGraph& q) {
  const int n = q.size();
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[std::size_t(x)] == x ? x : parent[std::size_t(x)] = find(parent[std::size_t(x)]); };
  for (auto& cyc : quadrangles(q)) {
    for (int k = 0; k < 2; ++k) {
      int u = cyc[std::size_t(k)], w = cyc[std::size_t(k + 2)];
      if (q.eta(u, w) == 0) parent[std::size_t(find(u))] = find(w);
    }
  }
  std::map<int, int> cls;
  std::vector<int> fiber_of(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    auto [it, ins] = cls.emplace(find(v), int(cls.size()));
    (void)ins;
    fiber_of[std::size_t(v)] = it->second;
  }
  if (cls.size() != 10) throw std::invalid_argument("induced_covering: graph is not a quadruple covering of the Petersen graph");
  WeightedGraph quotient(10);
  for (auto& [a, b, m] : q.edges()) {
    (void)m;
    int x = fiber_of[std::size_t(a)], y = fiber_of[std::size_t(b)];
    if (x == y) throw std::invalid_argument("induced_covering: edge inside a fibre");
    quotient.set(x, y, 1);
  }
  auto iso = find_isomorphism(quotient, petersen());
  if (!iso) throw std::invalid_argument("induced_covering: quotient is not the Petersen graph");
  GraphMap gamma;
  for (int v = 0; v < n; ++v) gamma.vertex_map.push_back((*iso)(fiber_of[std::size_t(v)]));
  if (!is_qp_covering(q, gamma)) throw std::invalid_argument("induced_covering: fibre map is not a QP-covering");
  return gamma;
}

// ---- enumeration of quadruple coverings

namespace {

// an ordered pair of complementary 2-subsets of {0,1,2,3}, as bitmasks
using SplitPair = std::array<int, 2>;
using Triple = std::array<SplitPair, 3>;

std::vector<SplitPair> all_split_pairs() {
  std::vector<SplitPair> out;
  for (int m = 0; m < 16; ++m)
    if (__builtin_popcount(unsigned(m)) == 2) out.push_back({m, 15 ^ m});
  return out;
}

std::vector<Triple> all_triples() {
  auto d = all_split_pairs();
  std::vector<Triple> out;
  for (auto& x : d)
    for (auto& y : d)
      for (auto& z : d) {
        auto meet1 = [](const SplitPair& s, const SplitPair& t) { return __builtin_popcount(unsigned(s[0] & t[0])) == 1; };
        if (meet1(x, y) && meet1(x, z) && meet1(y, z)) out.push_back({x, y, z});
      }
  return out;
}

int permute_mask(int m, const std::array<int, 4>& s) {
  int r = 0;
  for (int i = 0; i < 4; ++i)
    if (m >> i & 1) r |= 1 << s[std::size_t(i)];
  return r;
}

// orbit index (0 or 1) of every triple under relabelling of {0,1,2,3}
std::vector<int> triple_orbits(const std::vector<Triple>& ts, std::vector<std::size_t>& sizes) {
  std::map<Triple, std::size_t> idx;
  for (std::size_t i = 0; i < ts.size(); ++i) idx[ts[i]] = i;
  std::vector<int> orb(ts.size(), -1);
  std::array<int, 4> s{0, 1, 2, 3};
  std::vector<std::array<int, 4>> perms;
  do perms.push_back(s);
  while (std::next_permutation(s.begin(), s.end()));
  int next = 0;
  sizes.clear();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (orb[i] >= 0) continue;
    std::size_t count = 0;
    for (auto& p : perms) {
      Triple t;
      for (int k = 0; k < 3; ++k) t[std::size_t(k)] = {permute_mask(ts[i][std::size_t(k)][0], p), permute_mask(ts[i][std::size_t(k)][1], p)};
      auto j = idx.at(t);
      if (orb[j] < 0) orb[j] = next, ++count;
    }
    sizes.push_back(count);
    ++next;
  }
  return orb;
}

}  // namespace

QpGraph qp_graph(unsigned psi) {
  const WeightedGraph p = petersen();
  auto ts = all_triples();
  std::vector<std::size_t> sizes;
  auto orb = triple_orbits(ts, sizes);
  // representatives: the first triple of each orbit; orbit 0 is o_1
  std::array<Triple, 2> rep;
  for (int o = 0; o < 2; ++o)
    for (std::size_t i = 0; i < ts.size(); ++i)
      if (orb[i] == o) {
        rep[std::size_t(o)] = ts[i];
        break;
      }
  std::vector<std::string> labels;
  for (int v = 0; v < 10; ++v)
    for (int i = 1; i <= 4; ++i) labels.push_back("(" + p.label(v) + "," + std::to_string(i) + ")");
  QpGraph out{WeightedGraph(40, labels), {}};
  auto assigned = [&](int v, int w) -> const SplitPair& {
    // edges at v ordered by the neighbour's index
    auto nb = p.neighbors(v);
    auto k = std::find(nb.begin(), nb.end(), w) - nb.begin();
    return rep[(psi >> v & 1u) ? 0 : 1][std::size_t(k)];
  };
  for (auto& [v, w, m] : p.edges()) {
    (void)m;
    const SplitPair& d = assigned(v, w);
    const SplitPair& e = assigned(w, v);
    for (int half = 0; half < 2; ++half)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          if ((d[std::size_t(half)] >> i & 1) && (e[std::size_t(half)] >> j & 1)) out.graph.set(4 * v + i, 4 * w + j, 1);
  }
  for (int x = 0; x < 40; ++x) out.gamma.vertex_map.push_back(x / 4);
  return out;
}

QpClassification qp_enumerate() {
  QpClassification r;
  r.pairs = all_split_pairs().size();
  auto ts = all_triples();
  r.triples = ts.size();
  auto orb = triple_orbits(ts, r.orbit_sizes);

  // reordering a triple keeps its orbit; swapping the halves of one entry changes it
  std::map<Triple, std::size_t> idx;
  for (std::size_t i = 0; i < ts.size(); ++i) idx[ts[i]] = i;
  bool reorder_ok = true;
  r.flip_switches_orbit = true;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    Triple t = ts[i];
    std::array<int, 3> s{0, 1, 2};
    do {
      Triple u{t[std::size_t(s[0])], t[std::size_t(s[1])], t[std::size_t(s[2])]};
      reorder_ok = reorder_ok && orb[idx.at(u)] == orb[i];
    } while (std::next_permutation(s.begin(), s.end()));
    Triple f = t;
    std::swap(f[2][0], f[2][1]);
    if (orb[idx.at(f)] == orb[i]) r.flip_switches_orbit = false;
  }
  if (!reorder_ok) throw std::logic_error("qp_enumerate: triple orbit depends on the order of its entries");

  r.candidates = 1024;
  r.class_sizes.assign(2, 0);
  r.all_coverings = true;
  r.parity_separates = true;
  std::vector<QpGraph> reps;
  std::vector<PermGroup> rep_aut;
  std::vector<int> rep_parity;
  for (unsigned psi = 0; psi < 1024; ++psi) {
    QpGraph q = qp_graph(psi);
    if (!is_qp_covering(q.graph, q.gamma)) r.all_coverings = false;
    int parity = __builtin_popcount(psi) & 1;
    std::size_t cls = reps.size();
    for (std::size_t k = 0; k < reps.size(); ++k)
      if (find_isomorphism(q.graph, reps[k].graph, q.gamma.vertex_map, reps[k].gamma.vertex_map, &rep_aut[k])) {
        cls = k;
        break;
      }
    if (cls == reps.size()) {
      rep_aut.push_back(automorphism_group(q.graph, q.gamma.vertex_map).group);
      reps.push_back(q), rep_parity.push_back(parity);
    }
    if (rep_parity[cls] != parity) r.parity_separates = false;
    ++r.class_sizes[std::size_t(parity)];
  }
  r.classes = reps.size();
  if (reps.size() != 2) r.parity_separates = false;
  r.q0 = qp_graph(0);
  r.q1 = qp_graph(1);
  return r;
}

}  // namespace k3
