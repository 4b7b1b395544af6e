#include "k3/perm.hpp"

#include <algorithm>
#include <numeric>

namespace k3 {

Perm perm_identity(int n) {
  Perm p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm perm_mul(const Perm& g, const Perm& h) {
  Perm r(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) r[i] = h[std::size_t(g[i])];
  return r;
}

Perm perm_inv(const Perm& g) {
  Perm r(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) r[std::size_t(g[i])] = int(i);
  return r;
}

bool perm_is_identity(const Perm& g) {
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g[i] != int(i)) return false;
  return true;
}

int perm_order(const Perm& g) {
  std::vector<char> seen(g.size(), 0);
  long long o = 1;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (seen[i]) continue;
    long long len = 0;
    for (std::size_t j = i; !seen[j]; j = std::size_t(g[j])) seen[j] = 1, ++len;
    o = std::lcm(o, len);
  }
  return int(o);
}

namespace {
int first_moved(const Perm& g) {
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g[i] != int(i)) return int(i);
  return -1;
}
}  // namespace

PermGroup::PermGroup(int degree, const std::vector<Perm>& gens, const std::vector<int>& base_prefix)
    : degree_(degree) {
  for (auto& g : gens) {
    if (int(g.size()) != degree) throw std::invalid_argument("PermGroup: generator of wrong degree");
    if (!perm_is_identity(g)) gens_.push_back(g);
  }
  build(base_prefix);
}

void PermGroup::build(const std::vector<int>& prefix) {
  base_ = prefix;
  levels_.clear();
  strong_.clear(), strong_inv_.clear(), strong_level_.clear();
  for (auto& g : gens_) {
    std::size_t j = 0;
    while (j < base_.size() && g[std::size_t(base_[j])] == base_[j]) ++j;
    if (j == base_.size()) base_.push_back(first_moved(g));
    strong_.push_back(g), strong_inv_.push_back(perm_inv(g)), strong_level_.push_back(int(j));
  }
  levels_.resize(base_.size());
  for (std::size_t i = 0; i < base_.size(); ++i) rebuild_level(i);
  if (!levels_.empty()) complete(levels_.size() - 1);
}

void PermGroup::rebuild_level(std::size_t i) {
  Level& L = levels_[i];
  L.point = base_[i];
  L.gen_ids.clear();
  for (std::size_t s = 0; s < strong_.size(); ++s)
    if (strong_level_[s] >= int(i)) L.gen_ids.push_back(int(s));
  L.sv.assign(std::size_t(degree_), -2);
  L.orbit.assign(1, L.point);
  L.sv[std::size_t(L.point)] = -1;
  for (std::size_t k = 0; k < L.orbit.size(); ++k)
    for (std::size_t t = 0; t < L.gen_ids.size(); ++t) {
      int img = strong_[std::size_t(L.gen_ids[t])][std::size_t(L.orbit[k])];
      if (L.sv[std::size_t(img)] != -2) continue;
      L.sv[std::size_t(img)] = int(t);
      L.orbit.push_back(img);
    }
}

Perm PermGroup::coset_rep(std::size_t i, int pt) const {
  const Level& L = levels_[i];
  Perm u = perm_identity(degree_);
  while (L.sv[std::size_t(pt)] != -1) {
    std::size_t id = std::size_t(L.gen_ids[std::size_t(L.sv[std::size_t(pt)])]);
    u = perm_mul(strong_[id], u);
    pt = strong_inv_[id][std::size_t(pt)];
  }
  return u;
}

std::pair<Perm, std::size_t> PermGroup::sift(const Perm& g0) const {
  Perm g = g0;
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    int beta = g[std::size_t(base_[i])];
    if (levels_[i].sv[std::size_t(beta)] == -2) return {g, i};
    g = perm_mul(g, perm_inv(coset_rep(i, beta)));
  }
  return {g, levels_.size()};
}

void PermGroup::add_strong(const Perm& g, std::size_t level) {
  strong_.push_back(g), strong_inv_.push_back(perm_inv(g)), strong_level_.push_back(int(level));
}

void PermGroup::complete(std::size_t from_level) {
  // levels deeper than i are a complete chain for their own stabilizers
  std::ptrdiff_t i = std::ptrdiff_t(from_level);
  while (i >= 0) {
    const std::size_t li = std::size_t(i);
    bool grew = false;
    for (std::size_t k = 0; k < levels_[li].orbit.size() && !grew; ++k) {
      int pt = levels_[li].orbit[k];
      Perm u = coset_rep(li, pt);
      for (std::size_t t = 0; t < levels_[li].gen_ids.size() && !grew; ++t) {
        const Perm& s = strong_[std::size_t(levels_[li].gen_ids[t])];
        int img = s[std::size_t(pt)];
        Perm h = perm_mul(perm_mul(u, s), perm_inv(coset_rep(li, img)));
        // h fixes base points 0..i; sift the rest of the way
        std::size_t j = li + 1;
        for (; j < levels_.size(); ++j) {
          int beta = h[std::size_t(base_[j])];
          if (levels_[j].sv[std::size_t(beta)] == -2) break;
          h = perm_mul(h, perm_inv(coset_rep(j, beta)));
        }
        if (j == levels_.size() && perm_is_identity(h)) continue;
        if (j == levels_.size()) {
          base_.push_back(first_moved(h));
          levels_.emplace_back();
        }
        add_strong(h, j);
        for (std::size_t l = li + 1; l <= j; ++l) rebuild_level(l);
        i = std::ptrdiff_t(j);
        grew = true;
      }
    }
    if (!grew) --i;
  }
}

bool PermGroup::contains(const Perm& g) const {
  if (int(g.size()) != degree_) return false;
  auto [r, lvl] = sift(g);
  return lvl == levels_.size() && perm_is_identity(r);
}

bool PermGroup::add_generator(const Perm& g) {
  if (int(g.size()) != degree_) throw std::invalid_argument("PermGroup: generator of wrong degree");
  if (contains(g)) return false;
  gens_.push_back(g);
  std::size_t j = 0;
  while (j < base_.size() && g[std::size_t(base_[j])] == base_[j]) ++j;
  if (j == base_.size()) {
    base_.push_back(first_moved(g));
    levels_.emplace_back();
  }
  add_strong(g, j);
  for (std::size_t l = 0; l <= j; ++l) rebuild_level(l);
  complete(j);
  return true;
}

Integer PermGroup::order() const {
  Integer o = 1;
  for (auto& L : levels_) o *= Integer(L.orbit.size());
  return o;
}

std::vector<int> PermGroup::orbit(int point) const {
  std::vector<char> seen(std::size_t(degree_), 0);
  std::vector<int> out{point};
  seen[std::size_t(point)] = 1;
  for (std::size_t k = 0; k < out.size(); ++k)
    for (auto& g : gens_) {
      int img = g[std::size_t(out[k])];
      if (!seen[std::size_t(img)]) seen[std::size_t(img)] = 1, out.push_back(img);
    }
  return out;
}

std::vector<std::vector<int>> PermGroup::orbits() const {
  std::vector<char> seen(std::size_t(degree_), 0);
  std::vector<std::vector<int>> out;
  for (int p = 0; p < degree_; ++p) {
    if (seen[std::size_t(p)]) continue;
    auto o = orbit(p);
    for (int x : o) seen[std::size_t(x)] = 1;
    std::sort(o.begin(), o.end());
    out.push_back(std::move(o));
  }
  return out;
}

std::vector<Perm> PermGroup::elements(std::size_t cap) const {
  if (order() > Integer(cap)) throw std::length_error("PermGroup::elements: group too large");
  std::vector<std::vector<Perm>> trans(levels_.size());
  for (std::size_t i = 0; i < levels_.size(); ++i)
    for (int pt : levels_[i].orbit) trans[i].push_back(coset_rep(i, pt));
  // g = u_{k-1} ... u_1 u_0
  std::vector<Perm> out{perm_identity(degree_)};
  for (std::size_t i = levels_.size(); i-- > 0;) {
    std::vector<Perm> next;
    next.reserve(out.size() * trans[i].size());
    for (auto& g : out)
      for (auto& u : trans[i]) next.push_back(perm_mul(g, u));
    out = std::move(next);
  }
  return out;
}

std::vector<Perm> PermGroup::level_generators(std::size_t level) const {
  std::vector<Perm> out;
  for (std::size_t s = 0; s < strong_.size(); ++s)
    if (strong_level_[s] >= int(level)) out.push_back(strong_[s]);
  return out;
}

std::optional<Perm> PermGroup::transversal(std::size_t level, int pt) const {
  if (level >= levels_.size() || levels_[level].sv[std::size_t(pt)] == -2) return std::nullopt;
  return coset_rep(level, pt);
}

PermGroup PermGroup::pointwise_stabilizer(const std::vector<int>& points) const {
  PermGroup full(degree_, strong_, points);
  return PermGroup(degree_, full.level_generators(points.size()));
}

}  // namespace k3
