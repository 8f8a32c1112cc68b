#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "cpcf/formula.hpp"
#include "cpcf/interpretation.hpp"

namespace cpcf {

// One sign assignment over a clause: an ordered list of (sign, member)
// pairs in the clause's canonical order. Renders as the left-folded
// conjunction of the signed members; the empty conjunction renders as ~_|_.
class SignedConjunction {
public:
  struct Part {
    bool positive;
    Formula base;
  };

  SignedConjunction() = default;

  // Sign assignment over the full clause; bit i of `negated` set means
  // member i occurs under a negation (no simplification: a negated ~q
  // becomes ~~q).
  static SignedConjunction over(const ClauseSet& clause, unsigned negated);

  const std::vector<Part>& parts() const { return parts_; }
  std::size_t size() const { return parts_.size(); }
  Formula part_formula(std::size_t i) const;
  Formula to_formula() const;

  // The sub-conjunction keeping only the parts whose bit is set in `keep`.
  SignedConjunction subset(unsigned keep) const;
  // Same parts, but with the signs of the parts outside `keep` flipped:
  // at a world satisfying this conjunction the kept members (and only
  // those) have the truth values the original assignment prescribes.
  SignedConjunction flip_outside(unsigned keep) const;

private:
  std::vector<Part> parts_;
};

// Caps on clause-indexed expansion. The sign-pattern translations are
// exponential in the clause size (doubly so for the superset order), so
// clauses beyond max_clause_size are rejected up front, and any produced
// formula larger than max_nodes aborts the translation.
struct TranslationBudget {
  std::size_t max_clause_size = 3;
  std::size_t max_nodes = 1000000;
};

struct BudgetError : std::runtime_error {
  BudgetError(const std::string& msg, std::size_t estimate)
      : std::runtime_error(msg), estimate(estimate) {}
  std::size_t estimate;
};

// All 2^|clause| sign assignments, in mask order (mask 0 = all positive,
// bit i = negate member i).
std::vector<SignedConjunction> gamma_star(const ClauseSet& clause,
                                          const TranslationBudget& b = {});

// Rewrites [ant, clause] cons as a guarded comparison in the tagged
// comparative language. For the counting and class-restricted readings the
// output is a single guarded strict comparison; for the superset reading
// with a nonempty clause the comparison must be split by exact agreement
// pattern (the superset order is partial, so the single-comparison form is
// unsound) and the output is already in the plain fragment.
Formula lower_cp_modality(const Formula& ant, const ClauseSet& clause,
                          const Formula& cons, Interpretation x,
                          const TranslationBudget& b = {});

// Eliminate one tagged comparative into the plain fragment. Arguments are
// the two compared formulas (l "is at least as possible as" r) and the
// clause of the tag.
Formula eliminate_cp_order(const Formula& l, const ClauseSet& clause,
                           const Formula& r, const TranslationBudget& b = {});
Formula eliminate_ms_order(const Formula& l, const ClauseSet& clause,
                           const Formula& r, const TranslationBudget& b = {});
Formula eliminate_nc_order(const Formula& l, const ClauseSet& clause,
                           const Formula& r, const TranslationBudget& b = {});

// Full inside-out compilation into the plain fragment: the result contains
// only atoms, _|_, ~, |, and untagged =<, and has the same extension as the
// input on every model under interpretation x. Conditionals with an empty
// clause compile directly to the classic possibility-guarded comparison.
// Throws BudgetError (with a node-count estimate) if the output would
// exceed the budget.
Formula translate_full(const Formula& f, Interpretation x,
                       const TranslationBudget& b = {});

}  // namespace cpcf
