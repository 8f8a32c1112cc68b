#include "cpcf/semantics.hpp"

#include <algorithm>

namespace cpcf {

namespace {

RelKind clause_rel_kind(Interpretation x) {
  switch (x) {
    case Interpretation::CP: return RelKind::CPRestricted;
    case Interpretation::NC: return RelKind::Counting;
    case Interpretation::MS: return RelKind::Superset;
  }
  return RelKind::Base;
}

RelKind comp_rel_kind(CompKind k) {
  switch (k) {
    case CompKind::Plain: return RelKind::Base;
    case CompKind::CP: return RelKind::CPRestricted;
    case CompKind::NC: return RelKind::Counting;
    case CompKind::MS: return RelKind::Superset;
  }
  return RelKind::Base;
}

}  // namespace

Evaluator::Evaluator(const ConditionalModel& m, Interpretation x)
    : m_(m), x_(x) {}

const WorldSet& Evaluator::extension(const Formula& f) {
  auto it = cache_.find(f.id());
  if (it != cache_.end()) return it->second;

  WorldSet out = m_.empty_set();
  const std::size_t n = m_.worlds.size();
  switch (f.kind()) {
    case Connective::Atom:
      out = m_.prop_extension(f.atom_name());
      break;
    case Connective::Bottom:
      break;
    case Connective::Not: {
      const WorldSet& a = extension(f.child(0));
      for (std::size_t i = 0; i < n; ++i) out[i] = !a[i];
      break;
    }
    case Connective::Or: {
      const WorldSet& a = extension(f.child(0));
      const WorldSet& b = extension(f.child(1));
      for (std::size_t i = 0; i < n; ++i) out[i] = a[i] || b[i];
      break;
    }
    case Connective::CPBox: {
      const WorldSet& ant = extension(f.child(0));
      const WorldSet& cons = extension(f.child(1));
      RelationSpec spec{clause_rel_kind(x_), f.clause(), -1, x_};
      for (std::size_t i = 0; i < n; ++i) {
        spec.center = static_cast<int>(i);
        Relation rel = realize(spec);
        out[i] = ws_subset(min_worlds(rel, ant), cons);
      }
      break;
    }
    case Connective::CompPoss: {
      const WorldSet& l = extension(f.child(0));
      const WorldSet& r = extension(f.child(1));
      RelationSpec spec{comp_rel_kind(f.comp_kind()), f.clause(), -1, x_};
      for (std::size_t i = 0; i < n; ++i) {
        spec.center = static_cast<int>(i);
        Relation rel = realize(spec);
        // l =< r : every entertainable r-world is matched by an l-world at
        // least as close.
        bool holds = true;
        for (int u : rel.domain) {
          if (!r[u]) continue;
          bool matched = false;
          for (int v : rel.domain) {
            if (l[v] && rel.leq(v, u)) {
              matched = true;
              break;
            }
          }
          if (!matched) {
            holds = false;
            break;
          }
        }
        out[i] = holds;
      }
      break;
    }
  }
  return cache_.emplace(f.id(), std::move(out)).first->second;
}

bool Evaluator::satisfies(int w, const Formula& f) {
  if (w < 0 || w >= static_cast<int>(m_.worlds.size()))
    throw EvalError("world index out of range");
  return extension(f)[w];
}

ClauseSet Evaluator::agreement_set(const ClauseSet& clause, int u, int v) {
  std::vector<Formula> agree;
  for (const Formula& g : clause.members()) {
    const WorldSet& e = extension(g);
    if (e[u] == e[v]) agree.push_back(g);
  }
  return ClauseSet(std::move(agree));
}

WorldSet Evaluator::agreement_class(const ClauseSet& clause, int w) {
  const SimilarityOrder& o = m_.order_at(w);
  WorldSet out = m_.empty_set();
  for (int u : o.domain()) {
    bool all = true;
    for (const Formula& g : clause.members()) {
      const WorldSet& e = extension(g);
      if (e[u] != e[w]) {
        all = false;
        break;
      }
    }
    out[u] = all;
  }
  return out;
}

Relation Evaluator::realize(const RelationSpec& spec) {
  if (spec.center < 0 || spec.center >= static_cast<int>(m_.worlds.size()))
    throw EvalError("relation center out of range");
  if (spec.interp != x_) {
    Evaluator sub(m_, spec.interp);
    return sub.realize(spec);
  }
  if (spec.kind == RelKind::Base) return base_relation(m_, spec.center);

  const SimilarityOrder& o = m_.order_at(spec.center);
  const std::vector<int>& base_dom = o.domain();

  if (spec.kind == RelKind::CPRestricted) {
    WorldSet cls = agreement_class(spec.clause, spec.center);
    std::vector<int> dom;
    for (int u : base_dom)
      if (cls[u]) dom.push_back(u);
    std::size_t n = dom.size();
    std::vector<char> leq(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        leq[i * n + j] = o.leq(dom[i], dom[j]) ? 1 : 0;
    return Relation::from_matrix(spec.center, std::move(dom), std::move(leq));
  }

  // Counting and Superset both compare agreement sets with the center.
  std::vector<ClauseSet> agr(base_dom.size());
  for (std::size_t i = 0; i < base_dom.size(); ++i)
    agr[i] = agreement_set(spec.clause, base_dom[i], spec.center);

  std::size_t n = base_dom.size();
  std::vector<char> leq(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      bool below;
      if (spec.kind == RelKind::Counting) {
        below = agr[i].size() > agr[j].size() ||
                (agr[i].size() == agr[j].size() &&
                 o.leq(base_dom[i], base_dom[j]));
      } else {  // Superset
        bool proper = agr[i] != agr[j];
        bool contains_all = true;
        for (const Formula& g : agr[j].members())
          if (!agr[i].contains(g)) {
            contains_all = false;
            break;
          }
        below = (contains_all && proper) ||
                (agr[i] == agr[j] && o.leq(base_dom[i], base_dom[j]));
      }
      leq[i * n + j] = below ? 1 : 0;
    }
  }
  return Relation::from_matrix(spec.center, base_dom, std::move(leq));
}

// ---------------------------------------------------------------------------
// Free functions

bool satisfies(const ConditionalModel& m, const std::string& world,
               const Formula& f, Interpretation x) {
  Evaluator ev(m, x);
  return ev.satisfies(m.require_world(world), f);
}

WorldSet extension(const ConditionalModel& m, const Formula& f,
                   Interpretation x) {
  Evaluator ev(m, x);
  return ev.extension(f);
}

ClauseSet agreement_set(const ConditionalModel& m, const ClauseSet& clause,
                        const std::string& u, const std::string& v,
                        Interpretation x) {
  Evaluator ev(m, x);
  return ev.agreement_set(clause, m.require_world(u), m.require_world(v));
}

WorldSet agreement_class(const ConditionalModel& m, const ClauseSet& clause,
                         const std::string& w, Interpretation x) {
  Evaluator ev(m, x);
  return ev.agreement_class(clause, m.require_world(w));
}

Relation cp_relation(const ConditionalModel& m, const ClauseSet& clause,
                     const std::string& w, Interpretation x) {
  Evaluator ev(m, x);
  RelationSpec spec;
  spec.clause = clause;
  spec.center = m.require_world(w);
  spec.interp = x;
  switch (x) {
    case Interpretation::CP: spec.kind = RelKind::CPRestricted; break;
    case Interpretation::NC: spec.kind = RelKind::Counting; break;
    case Interpretation::MS: spec.kind = RelKind::Superset; break;
  }
  return ev.realize(spec);
}

WorldSet min_worlds(const ConditionalModel& m, const RelationSpec& spec,
                    const WorldSet& S) {
  Evaluator ev(m, spec.interp);
  return min_worlds(ev.realize(spec), S);
}

}  // namespace cpcf
