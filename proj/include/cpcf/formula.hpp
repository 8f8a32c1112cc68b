#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace cpcf {

class Formula;

// Finite set of formulas kept in canonical order (lexicographic on the
// rendered form, duplicates removed by structural equality) so that clause
// iteration, sign-pattern enumeration, and printing are deterministic.
class ClauseSet {
public:
  ClauseSet() = default;
  explicit ClauseSet(std::vector<Formula> members);

  const std::vector<Formula>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(const Formula& f) const;
  ClauseSet with(const Formula& f) const;  // union with one extra member

  bool operator==(const ClauseSet& o) const;
  bool operator!=(const ClauseSet& o) const { return !(*this == o); }

private:
  std::vector<Formula> members_;
};

enum class Connective { Atom, Bottom, Not, Or, CPBox, CompPoss };

// Flavors of the comparative possibility operator: the plain Lewis ordering
// and the three clause-indexed orderings (counting, class-restricted,
// superset).
enum class CompKind { Plain, NC, CP, MS };

namespace detail {
struct FormulaNode;
}

// Immutable formula over the core connectives {atom, bottom, not, or,
// [phi,G]psi, comparative possibility}. Everything else (and, implication,
// top, diamonds, strict comparatives, might-counterfactual) is built as an
// abbreviation of the core.
class Formula {
public:
  static Formula atom(std::string name);
  static Formula bottom();
  static Formula lnot(Formula f);
  static Formula lor(Formula a, Formula b);
  static Formula cp_box(Formula ant, ClauseSet clause, Formula cons);
  static Formula comp(CompKind k, ClauseSet clause, Formula l, Formula r);

  // abbreviations
  static Formula top();                                    // ~_|_
  static Formula land(Formula a, Formula b);               // ~(~a | ~b)
  static Formula implies(Formula a, Formula b);            // ~a | b
  static Formula cp_diamond(Formula ant, ClauseSet clause, Formula cons);
  static Formula counterfactual(Formula a, Formula b);     // [a, {}] b
  static Formula might_counterfactual(Formula a, Formula b);
  static Formula comp_strict(CompKind k, ClauseSet clause, Formula l,
                             Formula r);                   // ~(r op l)
  static Formula diamond(Formula f);                       // ~(_|_ =< f)
  static Formula box(Formula f);                           // ~<>~f

  Connective kind() const;
  const std::string& atom_name() const;    // Atom
  const Formula& child(std::size_t i) const;
  std::size_t arity() const;
  const ClauseSet& clause() const;         // CPBox / CompPoss
  CompKind comp_kind() const;              // CompPoss

  bool operator==(const Formula& o) const;
  bool operator!=(const Formula& o) const { return !(*this == o); }

  // Node identity (pointer), usable as a cache key wherever subtrees are
  // shared. Structurally equal formulas may have distinct ids.
  const void* id() const;

private:
  explicit Formula(std::shared_ptr<const detail::FormulaNode> n)
      : node_(std::move(n)) {}
  static Formula make(detail::FormulaNode n);
  std::shared_ptr<const detail::FormulaNode> node_;
};

namespace detail {
struct FormulaNode {
  Connective kind;
  CompKind comp = CompKind::Plain;
  std::string name;            // Atom
  std::vector<Formula> kids;   // Not: f; Or: l,r; CPBox: ant,cons; Comp: l,r
  ClauseSet clause;            // CPBox, CompPoss (empty for Plain)
};
}  // namespace detail

// Concrete-syntax printer. parse_formula(render_formula(f)) == f for every
// formula; the rendered string is also the canonical key used to order
// clause sets.
std::string render_formula(const Formula& f);

// Propositional universe of discourse: the set of atom names occurring
// anywhere in the formula, including clause members.
std::set<std::string> universe_of_discourse(const Formula& f);
std::set<std::string> universe_of_discourse(const ClauseSet& c);

// The "everything else" clause: all atoms of `universe` that occur in
// neither side of the conditional, as a clause set of bare atoms.
ClauseSet von_wright_clause(const Formula& ant, const Formula& cons,
                            const std::set<std::string>& universe);

bool is_boolean(const Formula& f);  // no modal or comparative operators
bool is_lminus(const Formula& f);   // core fragment: plain =< only, no boxes

// Number of nodes in the rendered tree (shared subtrees counted once per
// occurrence); saturates instead of overflowing.
std::size_t tree_size(const Formula& f);

}  // namespace cpcf
