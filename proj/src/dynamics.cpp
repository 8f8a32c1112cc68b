#include "cpcf/dynamics.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

#include "cpcf/semantics.hpp"

namespace cpcf {

namespace {

// Ascending equivalence classes of a total preorder, by repeated extraction
// of the minimal elements.
std::vector<std::vector<int>> strata(const Relation& rel) {
  std::vector<int> remaining = rel.domain;
  std::vector<std::vector<int>> out;
  while (!remaining.empty()) {
    std::vector<int> layer, rest;
    for (int v : remaining) {
      bool minimal = true;
      for (int u : remaining)
        if (rel.strictly_below(u, v)) {
          minimal = false;
          break;
        }
      (minimal ? layer : rest).push_back(v);
    }
    out.push_back(std::move(layer));
    remaining = std::move(rest);
  }
  return out;
}

bool same_relation(const Relation& a, const Relation& b) {
  return a.domain == b.domain && a.matrix() == b.matrix();
}

SimilarityOrder order_from_relation(const Relation& rel) {
  if (rel.total) return SimilarityOrder::ranked(rel.center, strata(rel));
  std::vector<std::pair<int, int>> pairs;
  for (int u : rel.domain)
    for (int v : rel.domain)
      if (u != v && rel.leq(u, v)) pairs.emplace_back(u, v);
  return SimilarityOrder::from_pairs(rel.center, rel.domain, std::move(pairs));
}

}  // namespace

ConditionalModel update(const ConditionalModel& m, const UpdateDescriptor& d) {
  ConditionalModel out;
  out.name = m.name;
  out.worlds = m.worlds;
  out.valuation = m.valuation;

  Evaluator ev(m, d.interpretation);
  RelKind kind;
  switch (d.interpretation) {
    case Interpretation::CP: kind = RelKind::CPRestricted; break;
    case Interpretation::NC: kind = RelKind::Counting; break;
    case Interpretation::MS: kind = RelKind::Superset; break;
    default: kind = RelKind::Base; break;
  }

  for (std::size_t i = 0; i < m.worlds.size(); ++i) {
    int x = static_cast<int>(i);
    RelationSpec spec{kind, d.clause, x, d.interpretation};
    Relation rel = ev.realize(spec);
    if (same_relation(rel, base_relation(m, x))) {
      // Unchanged world: keep the original order (and keep defaulted worlds
      // defaulted).
      auto it = m.orders.find(x);
      if (it != m.orders.end()) out.orders.emplace(x, it->second);
      continue;
    }
    out.orders.emplace(x, order_from_relation(rel));
  }

  out.normalize();
  return out;
}

ConditionalModel update(const ConditionalModel& m, const ClauseSet& clause,
                        Interpretation x) {
  return update(m, UpdateDescriptor{clause, x});
}

bool check_dynamic_static_agreement(const ConditionalModel& m,
                                    const std::string& w, const Formula& ant,
                                    const ClauseSet& clause,
                                    const Formula& cons, Interpretation x) {
  if (!is_boolean(ant) || !is_boolean(cons))
    throw std::invalid_argument(
        "dynamic/static agreement requires modality-free antecedent and "
        "consequent");
  bool stat = satisfies(m, w, Formula::cp_box(ant, clause, cons), x);
  ConditionalModel upd = update(m, clause, x);
  bool dyn = satisfies(upd, w, Formula::counterfactual(ant, cons), x);
  return stat == dyn;
}

}  // namespace cpcf
