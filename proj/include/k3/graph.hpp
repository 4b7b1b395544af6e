#pragma once

#include "k3/lattice.hpp"
#include "k3/perm.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace k3 {

// Finite graph with nonnegative edge multiplicities eta(i,j), no loops.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  explicit WeightedGraph(int n, std::vector<std::string> labels = {});

  int size() const { return n_; }
  int eta(int i, int j) const { return eta_[std::size_t(i) * std::size_t(n_) + std::size_t(j)]; }
  void set(int i, int j, int m);
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int i) const { return labels_[std::size_t(i)]; }
  void set_labels(std::vector<std::string> l);

  std::vector<int> neighbors(int i) const;  // eta > 0
  int degree(int i) const;                  // sum of multiplicities
  // (i, j, m) with i < j and m > 0
  std::vector<std::array<int, 3>> edges() const;
  std::size_t edge_count() const { return edges().size(); }  // pairs with positive multiplicity
  bool is_simple() const;
  WeightedGraph induced(const std::vector<int>& vertices) const;
  IntMatrix gram() const;  // -2 on the diagonal, eta off it

  std::string to_json() const;
  std::string to_dot(const std::string& name = "G") const;
  static WeightedGraph from_json(const std::string& text);

 private:
  int n_ = 0;
  std::vector<int> eta_;
  std::vector<std::string> labels_;
};

// The lattice Z^V / Ker with the images of the vertices.
struct GraphLattice {
  Lattice lattice;
  IntMatrix vertex_images;    // row i = image of vertex i in lattice coordinates
  std::vector<int> basis_vertices;  // vertices forming the basis, when such a subset exists
};
GraphLattice lattice_from_graph(const WeightedGraph& g);

// A map of graphs is determined by its vertex map; edges follow.
struct GraphMap {
  std::vector<int> vertex_map;
  int operator()(int v) const { return vertex_map[std::size_t(v)]; }
};
// does the vertex map send every edge of a to an edge of b (multiplicities ignored)
bool is_graph_map(const WeightedGraph& a, const WeightedGraph& b, const GraphMap& f);

// ---- isomorphisms by colour refinement and individualisation

// Optional initial vertex colours restrict the search to colour-preserving maps.
// aut_b, if given, must consist of colour-preserving automorphisms of b; it
// only prunes the search.
std::optional<GraphMap> find_isomorphism(const WeightedGraph& a, const WeightedGraph& b,
                                         const std::vector<int>& colors_a = {}, const std::vector<int>& colors_b = {},
                                         const PermGroup* aut_b = nullptr);
// every isomorphism, in a deterministic order; throws past the cap
std::vector<GraphMap> isomorphisms(const WeightedGraph& a, const WeightedGraph& b, const std::vector<int>& colors_a = {},
                                   const std::vector<int>& colors_b = {}, std::size_t cap = 1000000);

struct GraphAutomorphisms {
  PermGroup group;  // acting on the vertices
  Integer order() const { return group.order(); }
};
GraphAutomorphisms automorphism_group(const WeightedGraph& g, const std::vector<int>& colors = {});

// ---- Petersen graph and quadruple coverings of it

// vertices are the 2-subsets of {1..5}, adjacent when disjoint
WeightedGraph petersen();
int girth(const WeightedGraph& g);  // of the underlying simple graph; 0 if acyclic

// all 4-cycles, each as vertices (a,b,c,d) in cyclic order
std::vector<std::array<int, 4>> quadrangles(const WeightedGraph& g);

bool is_qp_covering(const WeightedGraph& q, const GraphMap& gamma);
// fibres from the graph alone (non-adjacent vertices sharing a quadrangle);
// throws if q is not a quadruple covering of the Petersen graph
GraphMap induced_covering(const WeightedGraph& q);

struct QpGraph {
  WeightedGraph graph;
  GraphMap gamma;
};
struct QpClassification {
  std::size_t pairs = 0;    // |Delta|
  std::size_t triples = 0;  // |T(Delta)|
  std::vector<std::size_t> orbit_sizes;
  std::size_t candidates = 0;
  std::size_t classes = 0;  // up to covering isomorphism
  std::vector<std::size_t> class_sizes;  // indexed by parity of |psi^-1(o_1)|
  bool all_coverings = false;
  bool parity_separates = false;
  bool flip_switches_orbit = false;
  QpGraph q0, q1;
};
QpClassification qp_enumerate();
// the covering built from an orbit assignment (bit v of psi set = first orbit)
QpGraph qp_graph(unsigned psi);

}  // namespace k3
