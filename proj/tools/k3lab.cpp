// k3lab: command-line front end for the lattice computations on the two
// quartic K3 surfaces (the Fermat quartic over F_9 and its characteristic-0
// partner).

#include "CLI11.hpp"
#include "k3/k3aut.hpp"
#include "k3/report.hpp"

#include <filesystem>
#include <iostream>
#include <random>

using namespace k3;

namespace {

struct Global {
  bool deep = false;
  int threads = 1;
  std::string out;
  unsigned seed = 0;
};

// JSON goes to <out>/<file> when --out is set, else to stdout
void emit(const Global& g, const std::string& file, const Json& j) {
  if (g.out.empty()) {
    std::cout << j.dump() << "\n";
    return;
  }
  auto path = (std::filesystem::path(g.out) / file).string();
  write_json(j, path);
  std::cerr << "wrote " << path << "\n";
}

const SurfaceChamber& surface(const std::string& s) { return s == "x3" ? chamber_x3() : chamber_x0(); }

Json labels(const std::vector<int>& lines) {
  Json j = Json::array();
  for (int l : lines) j.push_back(fermat_lines().line_label(l));
  return j;
}

// ---- fermat

void fermat_lines_cmd(const Global& g) {
  const FermatLines& fl = fermat_lines();
  Json lines = Json::array();
  for (std::size_t l = 0; l < fl.lines.size(); ++l) {
    Json pts = Json::array();
    for (int p : fl.lines[l].points) pts.push_back(point_string(fl.points[std::size_t(p)]));
    lines.push_back({{"label", fl.line_label(int(l))}, {"points", pts}});
  }
  emit(g, "lines.json", lines);
}

void fermat_graph_cmd(const Global& g, bool dot) {
  const WeightedGraph& gr = dual_graph_112();
  if (dot) {
    if (g.out.empty())
      std::cout << gr.to_dot("L112");
    else
      write_text(gr.to_dot("L112"), (std::filesystem::path(g.out) / "l112.dot").string());
    return;
  }
  emit(g, "l112.json", graph_json(gr));
}

void fermat_fibration_cmd(const Global& g) {
  const Fibration& f = fermat_fibration();
  const int z = zero_section_line();
  Json fibres = Json::array();
  for (std::size_t i = 0; i < f.fibers.size(); ++i)
    fibres.push_back({{"value", f.values[i]}, {"lines", labels({f.fibers[i].begin(), f.fibers[i].end()})}});
  std::vector<Json> inv;
  for (auto& d : torsion_group_invariants(ns3(), f, z)) inv.push_back(to_json(d));
  emit(g, "fibration.json",
       {{"fibres", fibres},
        {"sections", labels(f.sections)},
        {"bisections", labels(f.bisections)},
        {"zero_section", fermat_lines().line_label(z)},
        {"torsion_sections", labels(torsion_sections(ns3(), f, z))},
        {"torsion_invariants", inv}});
}

void fermat_l40_cmd(const Global& g) {
  const L40Data& d = l40();
  emit(g, "l40.json",
       {{"lines", labels(d.lines)},
        {"graph", graph_json(d.graph)},
        {"s0", lattice_json(d.s0)},
        {"rho", to_json(d.rho)},
        {"classes", to_json(d.classes)},
        {"h0", to_json(d.h0)}});
}

void fermat_counts_cmd(const Global& g) {
  AlphaCounts a = count_alpha_tuples();
  CurveCounts c = curve_counts(g.deep ? 7 : 6, g.deep);
  Json curves, orbits;
  for (auto& [d, n] : c.counts) curves[std::to_string(d)] = n;
  for (auto& [d, o] : c.orbit_sizes) orbits[std::to_string(d)] = o;
  Json j{{"alpha_tuples", a.tuples},
         {"alpha_stabilizer", to_json(a.stabilizer_order)},
         {"l40_configurations", a.l40_orbit},
         {"l40_stabilizer", to_json(a.l40_stabilizer)},
         {"curves", curves}};
  if (!orbits.is_null()) j["curve_orbits"] = orbits;
  emit(g, "counts.json", j);
}

// ---- borcherds

void walls_cmd(const Global& g, const std::string& s) {
  const SurfaceChamber& sc = surface(s);
  emit(g, (s == "x3" ? "D3" : "D0") + std::string(".json"), chamber_json(*sc.e, sc.chamber, sc.h));
}

void orbits_cmd(const Global& g, const std::string& s) {
  Json out;
  for (std::string name : {"x0", "x3"}) {
    if (!s.empty() && s != name) continue;
    const SurfaceChamber& sc = surface(name);
    Json rows = Json::array();
    for (auto& o : sc.inner_orbits) {
      const Wall& w = sc.chamber.walls[std::size_t(o.front())];
      rows.push_back({{"size", o.size()}, {"norm", to_json(w.norm)}, {"pairing_h", w.v.dot(sc.h).get()},
                      {"representative", to_json(w.v)}});
    }
    out[name] = {{"outer", sc.chamber.outer().size()}, {"inner_orbits", rows}};
  }
  emit(g, "orbits.json", out);
}

// walk from the initial chamber to its image under a word in the transporters
int walk_cmd(const Global& g, const std::string& s, std::vector<int> word) {
  const SurfaceChamber& sc = surface(s);
  const Embedding& e = *sc.e;
  GeneratorReport gens = aut_generators(sc);
  if (word.empty()) {
    std::mt19937 rng(g.seed);
    std::uniform_int_distribution<int> pick(0, int(gens.items.size()) - 1);
    for (int i = 0; i < 3; ++i) word.push_back(pick(rng));
  }
  IntMatrix m = IntMatrix::Identity(e.S().rank(), e.S().rank());
  for (int i : word) {
    if (i < 0 || i >= int(gens.items.size())) throw CLI::ValidationError("--word", "generator index out of range");
    m = IntMatrix(m * gens.items[std::size_t(i)].g);
  }
  RatVector target = sc.chamber.interior * convert<Rational>(m);
  Walk w = walk_to(e, sc.chamber, target);
  // the chamber reached must be the image of the start
  std::set<IntVector, VecLess> reached, image;
  for (auto& x : w.chamber.walls) reached.insert(x.v);
  for (auto& x : sc.chamber.walls) image.insert(e.act_dual(m, x.v));
  Json crossed = Json::array();
  for (auto& v : w.crossed) crossed.push_back(to_json(v));
  emit(g, "walk.json",
       {{"word", word},
        {"crossed", crossed},
        {"steps", w.crossed.size()},
        {"degree", e.S().pair(sc.h, IntVector(sc.h * m)).get()},
        {"reached_image", reached == image}});
  return reached == image ? 0 : 1;
}

// ---- k3

void aut_cmd(const Global& g, const std::string& s, const std::string& emit_file) {
  const SurfaceChamber& sc = surface(s);
  GeneratorReport r = aut_generators(sc);
  Json fin = Json::array(), tr = Json::array();
  for (auto& m : sc.aut_period) fin.push_back(to_json(m));
  for (auto& it : r.items)
    tr.push_back({{"orbit", it.orbit_size},
                  {"wall", to_json(sc.chamber.walls[std::size_t(it.wall)].v)},
                  {"norm", to_json(it.norm)},
                  {"pairing_h", it.pairing_h.get()},
                  {"degree", it.degree.get()},
                  {"period", it.period},
                  {"g", to_json(it.g)}});
  Json j{{"surface", s},
         {"h", to_json(sc.h)},
         {"chamber_symmetry_order", to_json(sc.aut_outer.order())},
         {"finite_generators", fin},
         {"transporters", tr}};
  if (!emit_file.empty()) {
    auto path = g.out.empty() ? emit_file : (std::filesystem::path(g.out) / emit_file).string();
    write_json(j, path);
    std::cerr << "wrote " << path << "\n";
  }
  std::cout << "Aut(X" << (s == "x3" ? "3" : "0") << "): " << sc.aut_period.size() << " generators of Aut(X,h), "
            << r.items.size() << " transporters\n";
  for (auto& it : r.items)
    std::cout << "  orbit " << it.orbit_size << ": <v,v> = " << it.norm << ", <v,h> = " << it.pairing_h
              << ", <h,h^g> = " << it.degree << (it.period ? "" : "  (period condition FAILS)") << "\n";
}

void tables_cmd(const Global& g, int which) {
  if (which == 3) {
    const SurfaceChamber& sc = chamber_x0();
    Json rows = Json::array();
    std::cout << "orbit  <v,v>  <v,h0>\n";
    for (auto& o : sc.inner_orbits) {
      const Wall& w = sc.chamber.walls[std::size_t(o.front())];
      std::cout << o.size() << "  " << w.norm << "  " << w.v.dot(sc.h) << "\n";
      rows.push_back({{"orbit", o.size()}, {"norm", to_json(w.norm)}, {"pairing_h", w.v.dot(sc.h).get()}});
    }
    if (!g.out.empty()) emit(g, "table3.json", rows);
    return;
  }
  const SurfaceChamber& sc = which == 1 ? chamber_x0() : chamber_x3();
  Json rows = Json::array();
  std::cout << "orbit  <v,v>  <v,h>  <h,b>  Sing(b)  d\n";
  for (auto& r : double_plane_table(sc)) {
    if (!r.dpp || !r.dpp->involution) {
      std::cout << r.orbit_size << "  " << r.norm << "  " << r.pairing_h << "  -  "
                << (r.dpp ? r.dpp->failure : std::string("no polarization found")) << "\n";
      rows.push_back({{"orbit", r.orbit_size}, {"failure", r.dpp ? r.dpp->failure : "no polarization found"}});
      continue;
    }
    std::cout << r.orbit_size << "  " << r.norm << "  " << r.pairing_h << "  " << r.pairing_b << "  "
              << ade_string(r.dpp->type) << "  " << r.degree << "\n";
    rows.push_back({{"orbit", r.orbit_size},
                    {"norm", to_json(r.norm)},
                    {"pairing_h", r.pairing_h.get()},
                    {"pairing_b", r.pairing_b.get()},
                    {"sing", ade_string(r.dpp->type)},
                    {"alternative_types", r.dpp->alternative_types},
                    {"d", r.degree.get()},
                    {"b", to_json(r.dpp->b)},
                    {"g", to_json(*r.dpp->involution)}});
  }
  if (!g.out.empty()) emit(g, "table" + std::to_string(which) + ".json", rows);
}

int report_cmd(const Global& g, const std::string& id, bool json) {
  ReportOptions opt;
  opt.deep = g.deep;
  opt.out_dir = g.out;
  opt.seed = g.seed;
  std::vector<std::string> ids = id == "all" ? report_ids() : std::vector<std::string>{id};
  bool ok = true;
  for (auto& i : ids) {
    Report r = run_report(i, opt);
    if (json)
      std::cout << r.to_json().dump() << "\n";
    else
      std::cout << r.summary();
    ok = ok && r.passed();
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k3lab: automorphisms of the Fermat quartic in characteristic 3 and its lift"};
  app.require_subcommand(1);
  Global g;
  app.add_flag("--deep", g.deep, "include the long computations (degree-7 curves)");
  app.add_option("--threads", g.threads, "worker threads (computations are sequential; kept for scripts)")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "directory for JSON output and witnesses");
  app.add_option("--seed", g.seed, "seed for randomized search order");

  auto* fermat = app.add_subcommand("fermat", "lines, dual graph and fibration of the Fermat quartic");
  fermat->require_subcommand(1);
  auto* f_lines = fermat->add_subcommand("lines", "the 112 lines");
  auto* f_graph = fermat->add_subcommand("graph", "dual graph of the lines");
  bool dot = false;
  f_graph->add_flag("--dot", dot, "GraphViz output");
  auto* f_fib = fermat->add_subcommand("fibration", "the elliptic fibration and its torsion sections");
  auto* f_l40 = fermat->add_subcommand("l40", "the 40-line configuration, S0 and rho");
  auto* f_counts = fermat->add_subcommand("counts", "alpha-tuples and smooth rational curves by degree");

  auto* borch = app.add_subcommand("borcherds", "chambers cut out by Leech roots");
  borch->require_subcommand(1);
  std::string surf = "x0";
  auto* b_walls = borch->add_subcommand("walls", "walls of the initial chamber");
  b_walls->add_option("--surface", surf)->check(CLI::IsMember({"x0", "x3"}));
  std::string orb_surf;
  auto* b_orbits = borch->add_subcommand("orbits", "inner-wall orbits under Aut(X,h)");
  b_orbits->add_option("--surface", orb_surf)->check(CLI::IsMember({"x0", "x3"}));
  std::vector<int> word;
  auto* b_walk = borch->add_subcommand("walk", "walk to the image of the initial chamber under a word");
  b_walk->add_option("--surface", surf)->check(CLI::IsMember({"x0", "x3"}));
  b_walk->add_option("--word", word, "indices into the transporters (random from --seed if absent)")->delimiter(',');

  auto* k3 = app.add_subcommand("k3", "automorphism groups");
  k3->require_subcommand(1);
  std::string emit_file;
  auto* k_aut = k3->add_subcommand("aut", "generators of Aut(X)");
  k_aut->add_option("--surface", surf)->check(CLI::IsMember({"x0", "x3"}));
  auto* emit_opt = k_aut->add_option("--emit", emit_file, "write the generators as JSON (default aut_<surface>.json)")
                       ->expected(0, 1);
  auto* k_spec = k3->add_subcommand("specialize", "the specialization from X3 to X0");
  auto* k_enr = k3->add_subcommand("enriques", "Enriques involutions of X0 and their lift");
  int which = 1;
  auto* k_tab = k3->add_subcommand("tables", "double-plane tables and the inner walls of D0");
  k_tab->add_option("--which", which)->check(CLI::IsMember({1, 2, 3}))->required();

  std::string id;
  bool as_json = false;
  auto* rep = app.add_subcommand("run_report", "run a reproduction report (exit 0 iff all checks pass)");
  rep->alias("report");
  std::vector<std::string> ids = report_ids();
  ids.push_back("all");
  rep->add_option("id", id)->required()->check(CLI::IsMember(ids));
  rep->add_flag("--json", as_json, "print the JSON record instead of the summary");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*f_lines) fermat_lines_cmd(g);
    else if (*f_graph) fermat_graph_cmd(g, dot);
    else if (*f_fib) fermat_fibration_cmd(g);
    else if (*f_l40) fermat_l40_cmd(g);
    else if (*f_counts) fermat_counts_cmd(g);
    else if (*b_walls) walls_cmd(g, surf);
    else if (*b_orbits) orbits_cmd(g, orb_surf);
    else if (*b_walk) return walk_cmd(g, surf, word);
    else if (*k_aut) {
      if (emit_opt->count() && emit_file.empty()) emit_file = "aut_" + surf + ".json";
      aut_cmd(g, surf, emit_file);
    }
    else if (*k_spec) return report_cmd(g, "specialization", false);
    else if (*k_enr) return report_cmd(g, "enriques", false);
    else if (*k_tab) tables_cmd(g, which);
    else if (*rep) return report_cmd(g, id, as_json);
  } catch (const std::exception& e) {
    std::cerr << "k3lab: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
