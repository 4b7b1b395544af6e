#include "k3/export.hpp"

#include "k3/linalg.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace k3 {

using Index = Eigen::Index;
namespace fs = std::filesystem;

Json to_json(const IntVector& v) {
  Json j = Json::array();
  for (Index i = 0; i < v.size(); ++i) j.push_back(v[i].get());
  return j;
}

Json to_json(const IntMatrix& m) {
  Json j = Json::array();
  for (Index i = 0; i < m.rows(); ++i) j.push_back(to_json(IntVector(m.row(i))));
  return j;
}

Json to_json(const RatVector& v) {
  Json j = Json::array();
  for (Index i = 0; i < v.size(); ++i) j.push_back(to_string(v[i]));
  return j;
}

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const Integer& n) {
  // small integers stay numbers; anything past 2^53 becomes a string
  if (abs(n) < (Integer(1) << 53)) return n.convert_to<long long>();
  return n.str();
}

Json lattice_json(const Lattice& L) {
  Json j;
  j["gram"] = to_json(L.gram());
  std::vector<std::string> labels = L.labels();
  if (labels.empty())
    for (Index i = 0; i < L.rank(); ++i) labels.push_back("e" + std::to_string(i));
  j["basis_labels"] = labels;
  return j;
}

Json graph_json(const WeightedGraph& g) { return Json::parse(g.to_json()); }

Json chamber_json(const Embedding& e, const Chamber& c, const IntVector& h) {
  return Json::parse(chamber_to_json(e, c, h));
}

IntVector int_vector(const Json& j) {
  IntVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[Index(i)] = j[i].get<long long>();
  return v;
}

RatVector rat_vector(const Json& j) {
  RatVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[Index(i)] = rational_from_string(j[i].get<std::string>());
  return v;
}

void write_text(const std::string& text, const std::string& path) {
  fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
  if (!f) throw std::runtime_error("write failed: " + path);
}

void write_json(const Json& j, const std::string& path) { write_text(j.dump() + "\n", path); }

std::optional<std::string> cache_dir() {
  const char* d = std::getenv("K3_CACHE_DIR");
  if (!d || !*d) return std::nullopt;
  return std::string(d);
}

std::optional<Json> cache_load(const std::string& key) {
  auto d = cache_dir();
  if (!d) return std::nullopt;
  std::ifstream f(fs::path(*d) / (key + ".json"));
  if (!f) return std::nullopt;
  try {
    return Json::parse(f);
  } catch (const Json::parse_error&) {
    return std::nullopt;  // a torn write; recomputed and overwritten
  }
}

void cache_store(const std::string& key, const Json& value) {
  auto d = cache_dir();
  if (!d) return;
  // write-then-rename so a concurrent reader never sees half a file
  fs::path dir(*d), tmp = dir / (key + ".json.tmp"), dst = dir / (key + ".json");
  write_json(value, tmp.string());
  fs::rename(tmp, dst);
}

std::string digest(const Json& j) {
  // FNV-1a over the canonical dump
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : j.dump()) h = (h ^ c) * 1099511628211ull;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

Json chamber_record(const Chamber& c) {
  Json j;
  j["weyl"] = to_json(c.weyl);
  j["interior"] = to_json(c.interior);
  j["candidates"] = c.candidates;
  j["lp_calls"] = c.lp_calls;
  j["walls"] = Json::array();
  for (auto& w : c.walls) {
    Json x{{"v", to_json(w.v)}, {"norm", to_json(w.norm)}, {"outer", w.outer}, {"witness", to_json(w.witness)}};
    if (w.outer) x["root"] = to_json(w.root);
    j["walls"].push_back(std::move(x));
  }
  return j;
}

std::optional<Chamber> chamber_from_record(const Embedding& e, const Json& j) {
  Chamber c;
  c.weyl = int_vector(j.at("weyl"));
  c.interior = rat_vector(j.at("interior"));
  c.candidates = j.at("candidates").get<std::size_t>();
  c.lp_calls = j.at("lp_calls").get<std::size_t>();
  for (auto& x : j.at("walls")) {
    Wall w;
    w.v = int_vector(x.at("v"));
    w.norm = rational_from_string(x.at("norm").get<std::string>());
    w.outer = x.at("outer").get<bool>();
    w.witness = rat_vector(x.at("witness"));
    if (w.outer) w.root = int_vector(x.at("root"));
    if (gcd_row(w.v) != 1 || e.dual_norm(w.v) != w.norm) return std::nullopt;
    if (w.outer && e.S().norm(w.root) != -2) return std::nullopt;
    if (w.witness.dot(convert_vec<Rational>(w.v)) >= 0) return std::nullopt;
    if (c.interior.dot(convert_vec<Rational>(w.v)) <= 0) return std::nullopt;
    c.walls.push_back(std::move(w));
  }
  c.reindex();
  return c;
}

}  // namespace

Chamber chamber_walls_cached(const Embedding& e, const IntVector& weyl, const ChamberOptions& opt) {
  if (!cache_dir() || opt.interior) return chamber_walls(e, weyl, opt);
  std::string key = "chamber-" + digest(Json{{"gram", to_json(e.S().gram())}, {"emb", to_json(e.emb())},
                                             {"weyl", to_json(weyl)}});
  if (auto j = cache_load(key))
    if (auto c = chamber_from_record(e, *j)) return *c;
  Chamber c = chamber_walls(e, weyl, opt);
  cache_store(key, chamber_record(c));
  return c;
}

}  // namespace k3
