#include "cpcf/translate.hpp"

#include <bit>
#include <string>
#include <utility>

namespace cpcf {

namespace {

constexpr std::size_t kHardClauseCap = 16;  // 2^16 sign patterns at most

std::size_t sat_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > static_cast<std::size_t>(-1) / a)
    return static_cast<std::size_t>(-1);
  return a * b;
}

std::size_t clause_footprint(const ClauseSet& clause) {
  std::size_t total = 1;
  for (const Formula& g : clause.members()) total += tree_size(g) + 1;
  return total;
}

void check_clause(const ClauseSet& clause, const TranslationBudget& b,
                  std::size_t per_pattern_cost) {
  std::size_t n = clause.size();
  if (n <= b.max_clause_size && n <= kHardClauseCap) return;
  std::size_t patterns =
      n >= 8 * sizeof(std::size_t) ? static_cast<std::size_t>(-1)
                                   : (std::size_t{1} << n);
  std::size_t estimate = sat_mul(sat_mul(patterns, patterns),
                                 per_pattern_cost + clause_footprint(clause));
  throw BudgetError("clause of size " + std::to_string(n) +
                        " exceeds the translation budget (max " +
                        std::to_string(b.max_clause_size) + ")",
                    estimate);
}

Formula checked(Formula f, const TranslationBudget& b) {
  std::size_t sz = tree_size(f);
  if (sz > b.max_nodes)
    throw BudgetError("translated formula of " + std::to_string(sz) +
                          " nodes exceeds the budget (max " +
                          std::to_string(b.max_nodes) + ")",
                      sz);
  return f;
}

Formula fold_and(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::top();
  Formula out = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i)
    out = Formula::land(std::move(out), fs[i]);
  return out;
}

Formula fold_or(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::bottom();
  Formula out = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i)
    out = Formula::lor(std::move(out), fs[i]);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// SignedConjunction

SignedConjunction SignedConjunction::over(const ClauseSet& clause,
                                          unsigned negated) {
  SignedConjunction sc;
  const auto& ms = clause.members();
  sc.parts_.reserve(ms.size());
  for (std::size_t i = 0; i < ms.size(); ++i)
    sc.parts_.push_back({(negated & (1u << i)) == 0, ms[i]});
  return sc;
}

Formula SignedConjunction::part_formula(std::size_t i) const {
  const Part& p = parts_.at(i);
  return p.positive ? p.base : Formula::lnot(p.base);
}

Formula SignedConjunction::to_formula() const {
  if (parts_.empty()) return Formula::top();
  Formula out = part_formula(0);
  for (std::size_t i = 1; i < parts_.size(); ++i)
    out = Formula::land(std::move(out), part_formula(i));
  return out;
}

SignedConjunction SignedConjunction::subset(unsigned keep) const {
  SignedConjunction sc;
  for (std::size_t i = 0; i < parts_.size(); ++i)
    if (keep & (1u << i)) sc.parts_.push_back(parts_[i]);
  return sc;
}

SignedConjunction SignedConjunction::flip_outside(unsigned keep) const {
  SignedConjunction sc = *this;
  for (std::size_t i = 0; i < sc.parts_.size(); ++i)
    if (!(keep & (1u << i))) sc.parts_[i].positive = !sc.parts_[i].positive;
  return sc;
}

// ---------------------------------------------------------------------------
// Sign-pattern enumeration

std::vector<SignedConjunction> gamma_star(const ClauseSet& clause,
                                          const TranslationBudget& b) {
  check_clause(clause, b, 1);
  unsigned n = static_cast<unsigned>(clause.size());
  std::vector<SignedConjunction> out;
  out.reserve(std::size_t{1} << n);
  for (unsigned mask = 0; mask < (1u << n); ++mask)
    out.push_back(SignedConjunction::over(clause, mask));
  return out;
}

// ---------------------------------------------------------------------------
// Order eliminations into the plain fragment

Formula eliminate_cp_order(const Formula& l, const ClauseSet& clause,
                           const Formula& r, const TranslationBudget& b) {
  check_clause(clause, b, tree_size(l) + tree_size(r));
  std::vector<Formula> conjuncts;
  for (const SignedConjunction& g : gamma_star(clause, b)) {
    Formula gf = g.to_formula();
    conjuncts.push_back(Formula::implies(
        gf, Formula::comp(CompKind::Plain, {}, Formula::land(l, gf),
                          Formula::land(r, gf))));
  }
  return checked(fold_and(conjuncts), b);
}

Formula eliminate_ms_order(const Formula& l, const ClauseSet& clause,
                           const Formula& r, const TranslationBudget& b) {
  check_clause(clause, b, tree_size(l) + tree_size(r));
  unsigned n = static_cast<unsigned>(clause.size());
  unsigned full = static_cast<unsigned>((std::size_t{1} << n) - 1);
  std::vector<Formula> outer;
  for (const SignedConjunction& g : gamma_star(clause, b)) {
    std::vector<Formula> per_subset;
    for (unsigned lam = 0; lam <= full; ++lam) {
      std::vector<Formula> guards;
      for (unsigned sup = 0; sup <= full; ++sup) {
        if (sup == lam || (sup & lam) != lam) continue;  // need lam < sup
        guards.push_back(Formula::lnot(
            Formula::diamond(Formula::land(l, g.subset(sup).to_formula()))));
      }
      Formula lf = g.subset(lam).to_formula();
      per_subset.push_back(Formula::implies(
          fold_and(guards),
          Formula::comp(CompKind::Plain, {}, Formula::land(l, lf),
                        Formula::land(r, lf))));
    }
    outer.push_back(Formula::implies(g.to_formula(), fold_and(per_subset)));
  }
  return checked(fold_and(outer), b);
}

Formula eliminate_nc_order(const Formula& l, const ClauseSet& clause,
                           const Formula& r, const TranslationBudget& b) {
  check_clause(clause, b, tree_size(l) + tree_size(r));
  unsigned n = static_cast<unsigned>(clause.size());
  unsigned full = static_cast<unsigned>((std::size_t{1} << n) - 1);
  std::vector<Formula> outer;
  for (const SignedConjunction& g : gamma_star(clause, b)) {
    std::vector<Formula> per_level;
    for (unsigned k = 0; k <= n; ++k) {
      std::vector<Formula> guards;
      for (unsigned sup = 0; sup <= full; ++sup) {
        if (static_cast<unsigned>(std::popcount(sup)) <= k) continue;
        guards.push_back(Formula::lnot(
            Formula::diamond(Formula::land(l, g.subset(sup).to_formula()))));
      }
      // Worlds agreeing on at least k clause members: the disjunction of
      // all size-k sub-conjunctions.
      std::vector<Formula> at_least_k;
      for (unsigned lam = 0; lam <= full; ++lam) {
        if (static_cast<unsigned>(std::popcount(lam)) == k)
          at_least_k.push_back(g.subset(lam).to_formula());
      }
      Formula dk = fold_or(at_least_k);
      per_level.push_back(Formula::implies(
          fold_and(guards),
          Formula::comp(CompKind::Plain, {}, Formula::land(l, dk),
                        Formula::land(r, dk))));
    }
    outer.push_back(Formula::implies(g.to_formula(), fold_and(per_level)));
  }
  return checked(fold_and(outer), b);
}

// ---------------------------------------------------------------------------
// Modality lowering

namespace {

// The superset order is a partial preorder, so the single guarded
// comparison that characterizes the conditional over total orders is
// unsound for it. Instead the conditional is split by exact agreement
// pattern: within each sign assignment g for the clause, a sub-conjunction
// lam picks the candidate agreement set, E = g.flip_outside(lam) holds at
// exactly the worlds whose agreement set is lam, and a counterexample world
// with that pattern is unbeatable precisely when no antecedent world has a
// strictly larger agreement set (the guard) and no same-pattern antecedent
// world is strictly closer (the plain strict comparison).
Formula lower_ms_nonempty(const Formula& ant, const ClauseSet& clause,
                          const Formula& cons, const TranslationBudget& b) {
  check_clause(clause, b, tree_size(ant) + tree_size(cons));
  unsigned n = static_cast<unsigned>(clause.size());
  unsigned full = static_cast<unsigned>((std::size_t{1} << n) - 1);
  std::vector<Formula> outer;
  for (const SignedConjunction& g : gamma_star(clause, b)) {
    std::vector<Formula> per_subset;
    for (unsigned lam = 0; lam <= full; ++lam) {
      std::vector<Formula> guards;
      for (unsigned sup = 0; sup <= full; ++sup) {
        if (sup == lam || (sup & lam) != lam) continue;
        guards.push_back(Formula::lnot(
            Formula::diamond(Formula::land(ant, g.subset(sup).to_formula()))));
      }
      Formula pattern = g.flip_outside(lam).to_formula();
      Formula matching = Formula::land(ant, pattern);
      Formula offending =
          Formula::land(Formula::land(ant, Formula::lnot(cons)), pattern);
      Formula inner = Formula::implies(
          Formula::diamond(offending),
          Formula::comp_strict(CompKind::Plain, {}, matching, offending));
      per_subset.push_back(Formula::implies(fold_and(guards), inner));
    }
    outer.push_back(Formula::implies(g.to_formula(), fold_and(per_subset)));
  }
  return checked(fold_and(outer), b);
}

}  // namespace

Formula lower_cp_modality(const Formula& ant, const ClauseSet& clause,
                          const Formula& cons, Interpretation x,
                          const TranslationBudget& b) {
  Formula pro = Formula::land(ant, cons);
  Formula con = Formula::land(ant, Formula::lnot(cons));
  if (clause.empty()) {
    // All three clause-indexed orders collapse to the base order, so the
    // classic guarded comparison is sound for every reading.
    return Formula::implies(
        Formula::diamond(ant),
        Formula::comp_strict(CompKind::Plain, {}, pro, con));
  }
  switch (x) {
    case Interpretation::NC:
      return Formula::implies(
          Formula::diamond(ant),
          Formula::comp_strict(CompKind::NC, clause, pro, con));
    case Interpretation::CP:
      // The guard must be relativized to the agreement class: the
      // conditional is vacuously true when the class holds no antecedent
      // world, even if one is entertainable outside the class.
      return Formula::implies(
          Formula::comp_strict(CompKind::CP, clause, ant, Formula::bottom()),
          Formula::comp_strict(CompKind::CP, clause, pro, con));
    case Interpretation::MS:
      return lower_ms_nonempty(ant, clause, cons, b);
  }
  throw std::invalid_argument("unknown interpretation");
}

// ---------------------------------------------------------------------------
// Full compilation

namespace {

Formula translate_rec(const Formula& f, Interpretation x,
                      const TranslationBudget& b);

ClauseSet translate_clause(const ClauseSet& c, Interpretation x,
                           const TranslationBudget& b) {
  std::vector<Formula> members;
  members.reserve(c.size());
  for (const Formula& g : c.members())
    members.push_back(translate_rec(g, x, b));
  return ClauseSet(std::move(members));
}

Formula translate_rec(const Formula& f, Interpretation x,
                      const TranslationBudget& b) {
  switch (f.kind()) {
    case Connective::Atom:
    case Connective::Bottom:
      return f;
    case Connective::Not:
      return Formula::lnot(translate_rec(f.child(0), x, b));
    case Connective::Or:
      return Formula::lor(translate_rec(f.child(0), x, b),
                          translate_rec(f.child(1), x, b));
    case Connective::CPBox: {
      Formula ant = translate_rec(f.child(0), x, b);
      Formula cons = translate_rec(f.child(1), x, b);
      ClauseSet clause = translate_clause(f.clause(), x, b);
      Formula pro = Formula::land(ant, cons);
      Formula con = Formula::land(ant, Formula::lnot(cons));
      if (clause.empty()) {
        // All three clause-indexed orders collapse to the base order, so
        // the classic guarded comparison is sound for every reading.
        return Formula::implies(
            Formula::diamond(ant),
            Formula::comp_strict(CompKind::Plain, {}, pro, con));
      }
      switch (x) {
        case Interpretation::CP:
          return Formula::implies(
              Formula::lnot(
                  eliminate_cp_order(Formula::bottom(), clause, ant, b)),
              Formula::lnot(eliminate_cp_order(con, clause, pro, b)));
        case Interpretation::NC:
          return Formula::implies(
              Formula::diamond(ant),
              Formula::lnot(eliminate_nc_order(con, clause, pro, b)));
        case Interpretation::MS:
          return lower_ms_nonempty(ant, clause, cons, b);
      }
      throw std::invalid_argument("unknown interpretation");
    }
    case Connective::CompPoss: {
      Formula l = translate_rec(f.child(0), x, b);
      Formula r = translate_rec(f.child(1), x, b);
      switch (f.comp_kind()) {
        case CompKind::Plain:
          return Formula::comp(CompKind::Plain, {}, l, r);
        case CompKind::CP:
          return eliminate_cp_order(l, translate_clause(f.clause(), x, b), r,
                                    b);
        case CompKind::NC:
          return eliminate_nc_order(l, translate_clause(f.clause(), x, b), r,
                                    b);
        case CompKind::MS:
          return eliminate_ms_order(l, translate_clause(f.clause(), x, b), r,
                                    b);
      }
      throw std::invalid_argument("unknown comparative kind");
    }
  }
  throw std::invalid_argument("unknown connective");
}

}  // namespace

Formula translate_full(const Formula& f, Interpretation x,
                       const TranslationBudget& b) {
  return checked(translate_rec(f, x, b), b);
}

}  // namespace cpcf
