#include "cpcf/model.hpp"

#include <algorithm>

namespace cpcf {

bool ws_subset(const WorldSet& a, const WorldSet& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

WorldSet ws_intersect(const WorldSet& a, const WorldSet& b) {
  WorldSet r(a.size(), false);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] && b[i];
  return r;
}

int ws_count(const WorldSet& a) {
  int n = 0;
  for (bool b : a) n += b ? 1 : 0;
  return n;
}

// ---------------------------------------------------------------------------
// SimilarityOrder

SimilarityOrder SimilarityOrder::ranked(int center,
                                        std::vector<std::vector<int>> ranks) {
  SimilarityOrder o;
  o.center_ = center;
  o.ranked_ = true;
  o.ranks_ = std::move(ranks);
  for (const auto& r : o.ranks_)
    for (int w : r) o.domain_.push_back(w);
  std::sort(o.domain_.begin(), o.domain_.end());
  o.build_matrix();
  return o;
}

SimilarityOrder SimilarityOrder::from_pairs(
    int center, std::vector<int> domain,
    std::vector<std::pair<int, int>> leq_pairs) {
  SimilarityOrder o;
  o.center_ = center;
  o.ranked_ = false;
  o.domain_ = std::move(domain);
  std::sort(o.domain_.begin(), o.domain_.end());
  o.domain_.erase(std::unique(o.domain_.begin(), o.domain_.end()),
                  o.domain_.end());
  o.pairs_ = std::move(leq_pairs);
  o.build_matrix();
  return o;
}

SimilarityOrder SimilarityOrder::trivial(int center) {
  return ranked(center, {{center}});
}

void SimilarityOrder::build_matrix() {
  slot_.clear();
  for (std::size_t i = 0; i < domain_.size(); ++i)
    slot_[domain_[i]] = static_cast<int>(i);
  std::size_t n = domain_.size();
  leq_.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) leq_[i * n + i] = 1;  // reflexive
  if (ranked_) {
    std::map<int, int> rank;
    for (std::size_t r = 0; r < ranks_.size(); ++r)
      for (int w : ranks_[r]) rank[w] = static_cast<int>(r);
    for (int u : domain_)
      for (int v : domain_)
        if (rank.count(u) && rank.count(v) && rank[u] <= rank[v])
          leq_[slot_[u] * n + slot_[v]] = 1;
  } else {
    for (auto [u, v] : pairs_) {
      auto iu = slot_.find(u), iv = slot_.find(v);
      if (iu != slot_.end() && iv != slot_.end())
        leq_[iu->second * n + iv->second] = 1;
    }
  }
}

bool SimilarityOrder::contains(int w) const { return slot_.count(w) != 0; }

bool SimilarityOrder::leq(int u, int v) const {
  auto iu = slot_.find(u), iv = slot_.find(v);
  if (iu == slot_.end() || iv == slot_.end()) return false;
  return leq_[iu->second * domain_.size() + iv->second] != 0;
}

int SimilarityOrder::rank_of(int w) const {
  for (std::size_t r = 0; r < ranks_.size(); ++r)
    for (int x : ranks_[r])
      if (x == w) return static_cast<int>(r);
  return -1;
}

// ---------------------------------------------------------------------------
// ConditionalModel

int ConditionalModel::world_index(const std::string& w) const {
  for (std::size_t i = 0; i < worlds.size(); ++i)
    if (worlds[i] == w) return static_cast<int>(i);
  return -1;
}

int ConditionalModel::require_world(const std::string& w) const {
  int i = world_index(w);
  if (i < 0) throw ModelError("unknown world '" + w + "'");
  return i;
}

const SimilarityOrder& ConditionalModel::order_at(int w) const {
  auto it = orders.find(w);
  if (it != orders.end()) return it->second;
  auto jt = trivials_.find(w);
  if (jt != trivials_.end()) return jt->second;
  throw ModelError("world index out of range");
}

WorldSet ConditionalModel::prop_extension(const std::string& p) const {
  auto it = valuation.find(p);
  if (it != valuation.end()) return it->second;
  return WorldSet(worlds.size(), false);
}

std::string ConditionalModel::world_set_names(const WorldSet& s) const {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!s[i]) continue;
    if (!first) out += ", ";
    first = false;
    out += worlds[i];
  }
  return out + "}";
}

void ConditionalModel::normalize() {
  defaulted.clear();
  trivials_.clear();
  for (std::size_t i = 0; i < worlds.size(); ++i) {
    int w = static_cast<int>(i);
    if (!orders.count(w)) {
      defaulted.insert(w);
      trivials_.emplace(w, SimilarityOrder::trivial(w));
    }
  }
}

// ---------------------------------------------------------------------------
// Relation

Relation Relation::from_matrix(int center, std::vector<int> domain,
                               std::vector<char> leq) {
  Relation r;
  r.center = center;
  r.domain = std::move(domain);
  r.leq_ = std::move(leq);
  for (std::size_t i = 0; i < r.domain.size(); ++i)
    r.slot_[r.domain[i]] = static_cast<int>(i);
  r.total = true;
  std::size_t n = r.domain.size();
  for (std::size_t i = 0; i < n && r.total; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!r.leq_[i * n + j] && !r.leq_[j * n + i]) {
        r.total = false;
        break;
      }
  return r;
}

bool Relation::in_domain(int u) const { return slot_.count(u) != 0; }

bool Relation::leq(int u, int v) const {
  auto iu = slot_.find(u), iv = slot_.find(v);
  if (iu == slot_.end() || iv == slot_.end()) return false;
  return leq_[iu->second * domain.size() + iv->second] != 0;
}

bool Relation::strictly_below(int u, int v) const {
  return leq(u, v) && !leq(v, u);
}

Relation base_relation(const ConditionalModel& m, int center) {
  const SimilarityOrder& o = m.order_at(center);
  std::size_t n = o.domain().size();
  std::vector<char> leq(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      leq[i * n + j] = o.leq(o.domain()[i], o.domain()[j]) ? 1 : 0;
  return Relation::from_matrix(center, o.domain(), std::move(leq));
}

WorldSet min_worlds(const Relation& rel, const WorldSet& S) {
  std::vector<int> cand;
  for (int w : rel.domain)
    if (w >= 0 && w < static_cast<int>(S.size()) && S[w]) cand.push_back(w);
  WorldSet out(S.size(), false);
  for (int v : cand) {
    bool minimal = true;
    for (int u : cand)
      if (rel.strictly_below(u, v)) {
        minimal = false;
        break;
      }
    if (minimal) out[v] = true;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

void check_pairs_order(const ConditionalModel& m, const SimilarityOrder& o,
                       ValidationMode mode, ValidationReport& rep) {
  const std::string cname = m.worlds[o.center()];
  const auto& dom = o.domain();
  if (!o.contains(o.center()))
    rep.violations.push_back("order of " + cname +
                             ": center not in its own domain");
  for (int u : dom)
    for (int v : dom)
      for (int z : dom)
        if (o.leq(u, v) && o.leq(v, z) && !o.leq(u, z)) {
          rep.violations.push_back("order of " + cname +
                                   ": transitivity fails at (" + m.worlds[u] +
                                   ", " + m.worlds[v] + ", " + m.worlds[z] +
                                   ")");
          return;
        }
  for (int v : dom) {
    if (v == o.center()) continue;
    if (!o.leq(o.center(), v) || o.leq(v, o.center()))
      rep.violations.push_back("order of " + cname + ": center not strictly below " +
                               m.worlds[v]);
  }
  if (mode == ValidationMode::Strict) {
    for (int u : dom)
      for (int v : dom)
        if (!o.leq(u, v) && !o.leq(v, u)) {
          rep.violations.push_back("order of " + cname + ": not total (" +
                                   m.worlds[u] + " vs " + m.worlds[v] + ")");
          return;
        }
  }
}

void check_ranked_order(const ConditionalModel& m, const SimilarityOrder& o,
                        ValidationReport& rep) {
  const std::string cname =
      o.center() >= 0 && o.center() < static_cast<int>(m.worlds.size())
          ? m.worlds[o.center()]
          : "?";
  std::set<int> seen;
  for (const auto& r : o.ranks()) {
    if (r.empty())
      rep.violations.push_back("order of " + cname + ": empty rank");
    for (int w : r) {
      if (w < 0 || w >= static_cast<int>(m.worlds.size())) {
        rep.violations.push_back("order of " + cname + ": world out of range");
        continue;
      }
      if (!seen.insert(w).second)
        rep.violations.push_back("order of " + cname + ": world " +
                                 m.worlds[w] + " appears in two ranks");
    }
  }
  if (o.ranks().empty() || o.ranks()[0] != std::vector<int>{o.center()})
    rep.violations.push_back("order of " + cname +
                             ": first rank must be exactly the center");
}

}  // namespace

ValidationReport validate_model(const ConditionalModel& m,
                                ValidationMode mode) {
  ValidationReport rep;
  if (m.worlds.empty()) rep.violations.push_back("no worlds declared");
  std::set<std::string> names(m.worlds.begin(), m.worlds.end());
  if (names.size() != m.worlds.size())
    rep.violations.push_back("duplicate world names");
  for (const auto& [p, ext] : m.valuation)
    if (ext.size() != m.worlds.size())
      rep.violations.push_back("valuation of " + p +
                               " does not match the world list");
  for (const auto& [w, o] : m.orders) {
    if (o.center() != w)
      rep.violations.push_back("order stored under " + m.worlds[w] +
                               " is centered elsewhere");
    if (o.is_ranked())
      check_ranked_order(m, o, rep);
    else
      check_pairs_order(m, o, mode, rep);
  }
  if (!m.defaulted.empty()) {
    std::string note = "defaulted (trivial) orders:";
    for (int w : m.defaulted) note += " " + m.worlds[w];
    rep.notes.push_back(note);
  }
  return rep;
}

}  // namespace cpcf
