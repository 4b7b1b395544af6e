#include "k3/report.hpp"

#include "k3/enumerate.hpp"
#include "k3/k3aut.hpp"
#include "k3/linalg.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#ifndef K3_DATA_DIR
#define K3_DATA_DIR "data"
#endif

namespace k3 {

using Index = Eigen::Index;

const std::string& anchor_for(const std::string& check) {
  static const std::map<std::string, std::string> anchors = [] {
    std::map<std::string, std::string> m;
    const char* env = std::getenv("K3_DATA_DIR");
    std::filesystem::path p = std::filesystem::path(env && *env ? env : K3_DATA_DIR) / "anchors.json";
    std::ifstream f(p);
    if (!f) return m;
    const Json j = Json::parse(f);
    for (auto& [k, v] : j.items()) m.emplace(k, v.get<std::string>());
    return m;
  }();
  static const std::string none;
  auto it = anchors.find(check);
  return it == anchors.end() ? none : it->second;
}

bool Report::passed() const {
  if (!error.empty() || checks.empty()) return false;
  for (auto& c : checks)
    if (!c.pass) return false;
  return true;
}

Json Report::to_json() const {
  Json j;
  j["id"] = id;
  j["passed"] = passed();
  if (!error.empty()) j["error"] = error;
  j["checks"] = Json::array();
  for (auto& c : checks) {
    Json x{{"name", c.name},         {"criterion", c.criterion}, {"expected", c.expected},
           {"computed", c.computed}, {"pass", c.pass},           {"anchor", c.anchor}};
    if (!c.witness.empty()) x["witness"] = c.witness;
    if (!c.note.empty()) x["note"] = c.note;
    j["checks"].push_back(std::move(x));
  }
  return j;
}

std::string Report::summary() const {
  std::ostringstream os;
  int ok = 0;
  for (auto& c : checks) ok += c.pass;
  os << "report " << id << ": " << (passed() ? "PASS" : "FAIL") << " (" << ok << "/" << checks.size() << " checks)\n";
  for (auto& c : checks) {
    os << "  " << (c.pass ? "ok  " : "FAIL") << " " << c.name << " = " << c.computed.dump();
    if (!c.pass) os << " (expected " << c.expected.dump() << ")";
    if (!c.anchor.empty()) os << "  [" << c.anchor << "]";
    os << "\n";
    if (!c.note.empty()) os << "         " << c.note << "\n";
  }
  if (!error.empty()) os << "  error: " << error << "\n";
  return os.str();
}

const std::vector<std::string>& report_ids() {
  static const std::vector<std::string> ids{"qp",           "fermat",         "embedding", "chambers-x3",
                                            "chambers-x0",  "specialization", "enriques",  "tables"};
  return ids;
}

namespace {

struct Builder {
  Report& r;
  const ReportOptions& opt;

  Check& add(const std::string& item, int criterion, Json expected, Json computed) {
    Check c;
    c.name = r.id + "." + item;
    c.criterion = criterion;
    c.pass = expected == computed;
    c.expected = std::move(expected);
    c.computed = std::move(computed);
    c.anchor = anchor_for(c.name);
    r.checks.push_back(std::move(c));
    return r.checks.back();
  }
  Check& flag(const std::string& item, int criterion, bool ok) { return add(item, criterion, true, ok); }

  // file name relative to the report directory, or "" when not exporting
  std::string witness(const std::string& file, const Json& j) {
    if (opt.out_dir.empty()) return "";
    write_json(j, (std::filesystem::path(opt.out_dir) / r.id / file).string());
    return r.id + "/" + file;
  }
};

std::string disc(const Lattice& L) { return DiscriminantForm(L).describe(); }

AdeType parse_ade(const std::string& s) {
  AdeType t;
  std::stringstream in(s);
  std::string part;
  while (std::getline(in, part, '+')) {
    std::size_t i = 0;
    int mult = 0;
    while (i < part.size() && std::isdigit(static_cast<unsigned char>(part[i]))) mult = mult * 10 + (part[i++] - '0');
    if (mult == 0) mult = 1;
    char kind = part.at(i++);
    int n = std::stoi(part.substr(i));
    for (int k = 0; k < mult; ++k) t.emplace_back(kind, n);
  }
  std::sort(t.begin(), t.end());
  return t;
}
std::string canonical_ade(const std::string& s) { return ade_string(parse_ade(s)); }

// |O(R)|, |image in O(q_R)|, |O(q_R)| and the number of roots of R
Json complement_data(const Lattice& R) {
  auto iso = definite_isometries(R);
  DiscriminantForm q(R);
  std::set<FormPerm> images;
  for (auto& g : iso) images.insert(induced_disc_action(q, g));
  std::size_t roots = 0;
  for (auto& v : short_vectors(R, -2, true)) roots += R.norm(v) == -2;
  return {{"roots", roots},
          {"det", to_json(R.det())},
          {"isometries", iso.size()},
          {"eta_image", images.size()},
          {"form_group", orthogonal_group_of_form(q).size()}};
}

// ---------------------------------------------------------------- qp

void report_qp(Builder& b) {
  QpClassification q = qp_enumerate();
  b.add("candidates", 1, 1024, q.candidates);
  b.add("classes", 1, 2, q.classes);
  b.flag("all_coverings", 1, q.all_coverings);
  Lattice l0 = lattice_from_graph(q.q0.graph).lattice, l1 = lattice_from_graph(q.q1.graph).lattice;
  b.add("q0_rank", 1, 20, l0.rank());
  b.flag("q0_hyperbolic", 1, l0.is_hyperbolic());
  b.add("q0_discriminant", 1, "(Z/2)^2", disc(l0));
  b.add("q1_rank", 1, 20, l1.rank());
  b.flag("q1_hyperbolic", 1, l1.is_hyperbolic());
  b.add("q1_discriminant", 1, "(Z/4)^2", disc(l1));
  b.witness("q0.json", graph_json(q.q0.graph));
  b.witness("q1.json", graph_json(q.q1.graph));

  PermGroup aut = automorphism_group(q.q1.graph).group;
  b.add("aut_q1", 2, 7680, to_json(aut.order()));
  // action on the Petersen graph through the covering map
  const GraphMap& gamma = q.q1.gamma;
  auto down = [&](const Perm& p) {
    Perm img(10, -1);
    for (int v = 0; v < q.q1.graph.size(); ++v) {
      int x = gamma(v), y = gamma(p[std::size_t(v)]);
      if (img[std::size_t(x)] >= 0 && img[std::size_t(x)] != y)
        throw std::logic_error("qp report: automorphism does not respect the fibres");
      img[std::size_t(x)] = y;
    }
    return img;
  };
  std::vector<Perm> images;
  for (auto& g : aut.generators()) images.push_back(down(g));
  b.add("petersen_image", 2, 120, to_json(PermGroup(10, images).order()));
  std::vector<Perm> kernel;
  for (auto& g : aut.elements())
    if (perm_is_identity(down(g))) kernel.push_back(g);
  b.add("kernel_order", 2, 64, kernel.size());
  bool elementary = true;
  for (auto& x : kernel) {
    elementary = elementary && perm_order(x) <= 2;
    for (auto& y : kernel) elementary = elementary && perm_mul(x, y) == perm_mul(y, x);
  }
  b.flag("kernel_elementary_abelian", 2, elementary);
}

// ---------------------------------------------------------------- fermat

void report_fermat(Builder& b) {
  const FermatLines& fl = fermat_lines();
  const WeightedGraph& g = dual_graph_112();
  b.add("lines", 3, 112, fl.lines.size());
  std::set<int> meet, disjoint, common;
  for (int v = 0; v < 112; ++v) {
    meet.insert(g.degree(v));
    int d = 0;
    for (int w = 0; w < 112; ++w) d += w != v && g.eta(v, w) == 0;
    disjoint.insert(d);
  }
  for (int a = 0; a < 112; ++a)
    for (int c = a + 1; c < 112; ++c) {
      if (g.eta(a, c) > 0) continue;
      int n = 0;
      for (int x = 0; x < 112; ++x) n += g.eta(a, x) > 0 && g.eta(c, x) > 0;
      common.insert(n);
    }
  b.add("meeting_per_line", 3, Json::array({30}), meet);
  b.add("disjoint_per_line", 3, Json::array({81}), disjoint);
  b.add("common_transversals", 3, Json::array({10}), common);
  int z = zero_section_line();
  b.flag("zero_section", 3, z >= 0).note = "line " + std::to_string(z) + ": " + fl.line_string(z);
  std::vector<Json> lines;
  for (int l = 0; l < 112; ++l) lines.push_back({{"label", fl.line_label(l)}, {"points", fl.line_string(l)}});
  b.r.checks.back().witness = b.witness("lines.json", lines);

  const NS3& s = ns3();
  b.add("s3_rank", 4, 22, s.lattice.rank());
  b.add("s3_signature", 4, Json::array({1, 21}),
        Json::array({s.lattice.signature().positive, s.lattice.signature().negative}));
  b.add("s3_det", 4, 9, to_json(Integer(abs(s.lattice.det()))));
  b.add("s3_discriminant", 4, "(Z/3)^2", disc(s.lattice));
  IntVector sum = s.classes.colwise().sum();
  b.flag("h3_is_mean_of_lines", 4, IntVector(s.h3 * Int(28)) == sum);
  std::set<long long> deg;
  for (int l = 0; l < 112; ++l) deg.insert(s.lattice.pair(s.h3, s.line_class(l)).get());
  b.add("h3_degree_on_lines", 4, Json::array({1}), deg);
  b.witness("ns3.json", lattice_json(s.lattice));

  const Pgu4& pg = pgu4();
  b.add("pgu4_order", 5, 13063680, to_json(pg.group.order()));
  bool fixes = true;
  for (auto& m : pg.isometries) fixes = fixes && IntVector(s.h3 * m) == s.h3;
  b.flag("pgu4_fixes_h3", 5, fixes);

  const Fibration& f = fermat_fibration();
  b.add("fibre_lines", 6, 24, 4 * f.fibers.size());
  b.add("sections", 6, 64, f.sections.size());
  bool disjoint_q = f.fibers.size() == 6;
  for (std::size_t i = 0; i < f.fibers.size(); ++i)
    for (std::size_t j = i + 1; j < f.fibers.size(); ++j)
      for (int x : f.fibers[i])
        for (int y : f.fibers[j]) disjoint_q = disjoint_q && g.eta(x, y) == 0;
  b.flag("fibre_quadrangles_disjoint", 6, disjoint_q);
  b.add("torsion_sections", 6, 16, torsion_sections(s, f, z).size());
  const L40Data& d = l40();
  QpClassification q = qp_enumerate();
  b.flag("l40_graph_is_q1", 6, find_isomorphism(d.graph, q.q1.graph).has_value());
  b.add("s0_rank", 6, 20, d.s0.rank());
  b.add("s0_discriminant", 6, "(Z/4)^2", disc(d.s0));
  b.flag("rho_primitive", 6, is_primitive(d.rho)).witness = b.witness("rho.json", to_json(d.rho));
  b.add("h0_norm", 6, 40, d.s0.norm(d.h0).get());
  b.witness("ns0.json", lattice_json(d.s0));
  b.witness("l40.json", graph_json(d.graph));

  AlphaCounts a = count_alpha_tuples();
  b.add("alpha_tuples", 7, 13063680, a.tuples);
  b.add("alpha_stabilizer", 7, 1, to_json(a.stabilizer_order));
  b.add("l40_configurations", 7, 13608, a.l40_orbit);
}

// ---------------------------------------------------------------- embedding

void report_embedding(Builder& b) {
  const PeriodTransfer& t = period_transfer();
  b.add("complement_gram", 8, Json::array({Json::array({-12, 0}), Json::array({0, -12})}), to_json(t.q.lattice.gram()))
      .witness = b.witness("complement.json", {{"basis", to_json(t.q.basis)}, {"lattice", lattice_json(t.q.lattice)}});
  b.flag("period_transfer", 8, t.three_part_bijective && t.two_part_bijective && t.allowed_to_allowed);

  Json r3 = complement_data(embed_ns3().e.R()), r0 = complement_data(embed_ns0().R());
  b.add("r3_roots", 9, 12, r3["roots"]).note = "2A2 has 12 roots";
  b.add("r3_det", 9, 9, r3["det"]);
  b.add("r3_isometries", 9, 288, r3["isometries"]);
  b.add("r3_eta_image", 9, Json::array({8, 8}), Json::array({r3["eta_image"], r3["form_group"]}));
  b.add("r0_roots", 9, 24, r0["roots"]).note = "2A3 has 24 roots";
  b.add("r0_det", 9, 16, r0["det"]);
  b.add("r0_isometries", 9, 4608, r0["isometries"]);
  b.add("r0_eta_image", 9, Json::array({8, 8}), Json::array({r0["eta_image"], r0["form_group"]}));
  bool root_free = true;
  std::string why;
  try {
    verify_weyl_vector(l26_with_weyl());
  } catch (const std::exception& e) {
    root_free = false;
    why = e.what();
  }
  b.flag("leech_root_free", 9, root_free).note = why;
  b.witness("i3.json", to_json(embed_ns3().e.emb()));
  b.witness("i0.json", to_json(embed_ns0().emb()));
}

// ---------------------------------------------------------------- chambers

Json orbit_invariants(const SurfaceChamber& sc) {
  Json out = Json::array();
  for (auto& o : sc.inner_orbits) {
    const Wall& w0 = sc.chamber.walls[std::size_t(o.front())];
    bool constant = true;
    for (int k : o) {
      const Wall& w = sc.chamber.walls[std::size_t(k)];
      constant = constant && w.norm == w0.norm && w.v.dot(sc.h) == w0.v.dot(sc.h);
    }
    out.push_back({{"orbit", o.size()}, {"norm", constant ? to_json(w0.norm) : Json("mixed")},
                   {"pairing_h", w0.v.dot(sc.h).get()}});
  }
  return out;
}

// c with pr_S(weyl) = c * h, or "" if not proportional
std::string weyl_ratio(const SurfaceChamber& sc) {
  RatVector pr = sc.e->project_s(l26_with_weyl().weyl);
  std::optional<Rational> c;
  for (Index i = 0; i < pr.size(); ++i) {
    if (sc.h[i] == 0) {
      if (pr[i] != 0) return "";
      continue;
    }
    Rational r = pr[i] / Rational(sc.h[i].get());
    if (c && *c != r) return "";
    c = r;
  }
  return c ? to_string(*c) : "";
}

void chamber_common(Builder& b, const SurfaceChamber& sc, int crit, const WeightedGraph& lines, std::size_t total,
                    std::size_t outer, const Json& invariants, const char* file) {
  const Chamber& c = sc.chamber;
  b.add("walls", crit, total, c.walls.size()).witness = b.witness(file, chamber_json(*sc.e, c, sc.h));
  b.add("outer_walls", crit, outer, c.outer().size());
  b.flag("outer_graph", crit, find_isomorphism(outer_graph(sc.e->S(), c), lines).has_value());
  std::multiset<std::size_t> sizes;
  for (auto& o : sc.inner_orbits) sizes.insert(o.size());
  std::multiset<std::size_t> want;
  for (auto& x : invariants) want.insert(x["orbit"].get<std::size_t>());
  b.add("inner_orbits", crit, want, sizes);
  // compare as sets of rows, independent of orbit order
  std::set<Json> a(invariants.begin(), invariants.end());
  Json got = orbit_invariants(sc);
  std::set<Json> g(got.begin(), got.end());
  b.add("inner_invariants", crit, Json(a), Json(g));
}

void transporters(Builder& b, const SurfaceChamber& sc) {
  GeneratorReport gens = aut_generators(sc);
  Json rows = Json::array(), mats = Json::array();
  bool ok = !gens.items.empty();
  for (auto& it : gens.items) {
    ok = ok && it.period && it.adjacent;
    rows.push_back({{"orbit", it.orbit_size}, {"period", it.period}, {"adjacent", it.adjacent},
                    {"degree", it.degree.get()}});
    mats.push_back({{"orbit", it.orbit_size}, {"wall", it.wall}, {"g", to_json(it.g)}});
  }
  Check& c = b.flag("transporters", 14, ok);
  c.witness = b.witness("generators.json", mats);
  c.note = rows.dump();
}

void report_chambers_x3(Builder& b) {
  const SurfaceChamber& sc = chamber_x3();
  Json inv = Json::array({Json{{"orbit", 648}, {"norm", "-4/3"}, {"pairing_h", 2}},
                          Json{{"orbit", 5184}, {"norm", "-2/3"}, {"pairing_h", 3}}});
  chamber_common(b, sc, 10, dual_graph_112(), 5944, 112, inv, "D3.json");
  std::string ratio = weyl_ratio(sc);
  b.flag("weyl_projection", 10, !ratio.empty() && rational_from_string(ratio) > 0).note = "pr(w0) = " + ratio + " h3";
  transporters(b, sc);
}

void report_chambers_x0(Builder& b) {
  const SurfaceChamber& sc = chamber_x0();
  Json inv = Json::array({Json{{"orbit", 64}, {"norm", "-5/4"}, {"pairing_h", 5}},
                          Json{{"orbit", 40}, {"norm", "-1"}, {"pairing_h", 6}},
                          Json{{"orbit", 160}, {"norm", "-1/2"}, {"pairing_h", 8}},
                          Json{{"orbit", 320}, {"norm", "-1/4"}, {"pairing_h", 9}}});
  chamber_common(b, sc, 11, l40().graph, 624, 40, inv, "D0.json");
  b.add("weyl_projection", 11, "1/2", weyl_ratio(sc));

  const AutX0& a = aut_x0_h0();
  b.add("aut_h0", 12, 3840, to_json(a.aut.order()));
  b.add("aut_l40", 12, 7680, to_json(a.graph_aut.order()));
  b.add("petersen_image", 12, 120, to_json(a.petersen_image.order()));
  b.add("kernel", 12, 32, a.kernel.size());
  b.flag("kernel_exponent_two", 12, a.kernel_exponent_two && a.kernel_abelian);
  const AutX0Fibre& f = aut_x0_f();
  b.add("aut_f", 12, 768, to_json(f.stabilizer.order()));
  b.add("f_orbit", 12, 5, f.orbit.size());
  b.add("block_image", 12, Json::array({24, 32}),
        Json::array({to_json(f.block_image_order), to_json(f.block_kernel_order)}));
  b.flag("galois_kernel", 12, f.galois_is_intersection);
  transporters(b, sc);
}

// ---------------------------------------------------------------- specialization

void report_specialization(Builder& b) {
  const SpecializationReport& s = specialization_analysis();
  b.flag("h0_in_d3", 13, s.h0_in_d3);
  b.add("perp_walls", 13, 2, s.perp_walls.size());
  b.flag("perp_in_648", 13, s.perp_in_648);
  b.add("perp_pairing", 13, "0", to_json(s.perp_pairing));
  b.add("partners", 13, 42, s.partners);
  b.add("perpendicular_pairs", 13, 13608, s.perpendicular_pairs);
  b.add("pair_stabilizer", 13, 960, to_json(s.pair_stabilizer));
  b.add("chambers_over_d0", 13, 4, s.chambers_over_d0);
  b.add("coset_sizes", 13, Json::array({960, 960, 960, 960}), s.coset_sizes)
      .witness = b.witness("coset_reps.json", [&] {
    Json j = Json::array();
    for (auto& m : s.coset_reps) j.push_back(to_json(m));
    return j;
  }());
  b.flag("restriction_onto", 13, s.restriction_onto);
  b.flag("restriction_period", 13, s.restriction_respects_period);
  Json sep;
  for (auto& [k, v] : s.separated) sep[std::to_string(k)] = v;
  b.add("separated", 13, Json{{"40", false}, {"64", true}, {"160", true}, {"320", false}}, sep);

  const int top = b.opt.deep ? 7 : 6;
  CurveCounts c = curve_counts(top, b.opt.deep);
  Json got, want{{"1", 112}, {"2", 0}, {"3", 0}, {"4", 18144}, {"5", 0}, {"6", 0}};
  for (int d = 1; d <= 6; ++d) got[std::to_string(d)] = c.counts.at(d);
  b.add("curves", 13, want, got);
  if (b.opt.deep) {
    b.add("curves_deep", 13, 2177280, c.counts.at(7));
    b.add("curve_orbits_deep", 13, Json::array({1632960, 544320}), c.orbit_sizes.at(7));
  }
}

// ---------------------------------------------------------------- enriques

void report_enriques(Builder& b) {
  const EnriquesScan& s = enriques_scan();
  Json certs = Json::array();
  for (auto& c : s.passing)
    certs.push_back({{"g", to_json(c.g)}, {"fixed", lattice_json(c.fixed.lattice)}, {"anti", lattice_json(c.anti.lattice)}});
  b.add("passing", 15, 6, s.passing.size()).witness = b.witness("involutions.json", certs);
  b.r.checks.back().note = std::to_string(s.involutions) + " involutions examined";
  b.flag("conjugate", 15, s.conjugate);
  b.flag("in_kernel", 15, s.in_kernel);
  b.flag("fibre_pattern", 15, s.fibre_pattern);
  b.add("fixed_blocks", 15, Json::array({2, 2, 2, 2, 2, 2}), s.fixed_blocks);
  b.add("quotient_curves", 15, 20, s.quotient.size()).witness = b.witness("quotient.json", graph_json(s.quotient));
  if (!b.opt.out_dir.empty())
    write_text(s.quotient.to_dot("quotient"), (std::filesystem::path(b.opt.out_dir) / "enriques" / "quotient.dot").string());
  int pairs = 0;
  for (auto& [i, j, m] : s.quotient.edges()) pairs += m == 2;
  b.add("quotient_pairs", 15, 10, pairs);
  b.add("quotient_rank", 15, 10, s.quotient_lattice.rank());
  b.add("quotient_discriminant", 15, "(Z/2)^2", s.quotient_disc);

  const Eps3Report& e = eps3_analysis();
  b.flag("eps3_exists", 15, e.candidates > 0 && e.fourth_chamber && e.quotient_isomorphic && e.pullbacks_are_lines)
      .witness = b.witness("eps3.json", to_json(e.eps3));
  b.add("eps3_degree", 15, 16, e.degree.get());
  b.flag("eps3_fibre_pattern", 15, e.fibre_pattern && e.fixed_blocks == 2);
}

// ---------------------------------------------------------------- tables

struct Row {
  std::size_t orbit;
  int pairing_b;
  std::string sing;
  int degree;
};

void dpp_table(Builder& b, const std::string& item, const SurfaceChamber& sc, const std::vector<Row>& rows) {
  auto got = double_plane_table(sc);
  Json want = Json::array(), have = Json::array(), wit = Json::array();
  std::string notes;
  for (auto& r : rows) {
    want.push_back({{"orbit", r.orbit}, {"pairing_b", r.pairing_b}, {"sing", canonical_ade(r.sing)}, {"d", r.degree}});
    for (auto& g : got) {
      if (g.orbit_size != r.orbit) continue;
      if (!g.dpp || !g.dpp->involution) {
        have.push_back({{"orbit", g.orbit_size}, {"failure", g.dpp ? g.dpp->failure : "no polarization found"}});
        continue;
      }
      have.push_back({{"orbit", g.orbit_size},
                      {"pairing_b", g.pairing_b.get()},
                      {"sing", ade_string(g.dpp->type)},
                      {"d", g.degree.get()}});
      wit.push_back({{"orbit", g.orbit_size}, {"b", to_json(g.dpp->b)}, {"g", to_json(*g.dpp->involution)}});
      if (g.dpp->alternative_types.size() > 1) {
        notes += std::to_string(g.orbit_size) + ": " + std::to_string(g.dpp->alternatives) + " candidates of types";
        for (auto& t : g.dpp->alternative_types) notes += " " + t;
        notes += "; ";
      }
    }
  }
  Check& c = b.add(item, 16, want, have);
  c.witness = b.witness(item + ".json", wit);
  c.note = notes;
}

void report_tables(Builder& b) {
  const SurfaceChamber& x0 = chamber_x0();
  dpp_table(b, "table1", x0,
            {{64, 16, "2A3+3A2+2A1", 80}, {40, 18, "4A3+3A1", 112}, {160, 26, "A5+2A4+A3", 296}, {320, 38, "2A7+A3+A1", 688}});
  dpp_table(b, "table2", chamber_x3(), {{648, 6, "4A2+6A1", 10}, {5184, 9, "4A3+6A1", 31}});
  Json inv = Json::array({Json{{"orbit", 64}, {"norm", "-5/4"}, {"pairing_h", 5}},
                          Json{{"orbit", 40}, {"norm", "-1"}, {"pairing_h", 6}},
                          Json{{"orbit", 160}, {"norm", "-1/2"}, {"pairing_h", 8}},
                          Json{{"orbit", 320}, {"norm", "-1/4"}, {"pairing_h", 9}}});
  std::set<Json> want(inv.begin(), inv.end());
  Json got = orbit_invariants(x0);
  b.add("table3", 11, Json(want), Json(std::set<Json>(got.begin(), got.end())));

  Json lw = Json::array({Json{{"orbit", 40}, {"pairing_h3", 9}, {"d3", 34}, {"polarization", true}},
                         Json{{"orbit", 320}, {"pairing_h3", 19}, {"d3", 178}, {"polarization", true}}});
  Json lg = Json::array(), wit = Json::array();
  for (auto& l : lifted_polarizations()) {
    lg.push_back({{"orbit", l.orbit_size}, {"pairing_h3", l.pairing_h3.get()}, {"d3", l.degree3.get()},
                  {"polarization", l.on_x3.is_polarization() && l.on_x3.involution.has_value()}});
    wit.push_back({{"orbit", l.orbit_size}, {"rho_b", to_json(l.b)}, {"sing", ade_string(l.on_x3.type)}});
  }
  b.add("lifted", 16, lw, lg).witness = b.witness("lifted.json", wit);
}

}  // namespace

Report run_report(const std::string& id, const ReportOptions& opt) {
  static const std::map<std::string, std::function<void(Builder&)>> pipelines{
      {"qp", report_qp},
      {"fermat", report_fermat},
      {"embedding", report_embedding},
      {"chambers-x3", report_chambers_x3},
      {"chambers-x0", report_chambers_x0},
      {"specialization", report_specialization},
      {"enriques", report_enriques},
      {"tables", report_tables}};
  auto it = pipelines.find(id);
  if (it == pipelines.end()) throw std::invalid_argument("unknown report id: " + id);
  Report r;
  r.id = id;
  Builder b{r, opt};
  auto t0 = std::chrono::steady_clock::now();
  try {
    it->second(b);
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!opt.out_dir.empty()) write_json(r.to_json(), (std::filesystem::path(opt.out_dir) / (id + ".json")).string());
  return r;
}

}  // namespace k3
