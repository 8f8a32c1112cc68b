#include "cpcf/formula.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace cpcf {

using detail::FormulaNode;

Formula Formula::make(FormulaNode n) {
  return Formula(std::make_shared<const FormulaNode>(std::move(n)));
}

Formula Formula::atom(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty atom name");
  FormulaNode n;
  n.kind = Connective::Atom;
  n.name = std::move(name);
  return make(std::move(n));
}

Formula Formula::bottom() {
  FormulaNode n;
  n.kind = Connective::Bottom;
  return make(std::move(n));
}

Formula Formula::lnot(Formula f) {
  FormulaNode n;
  n.kind = Connective::Not;
  n.kids = {std::move(f)};
  return make(std::move(n));
}

Formula Formula::lor(Formula a, Formula b) {
  FormulaNode n;
  n.kind = Connective::Or;
  n.kids = {std::move(a), std::move(b)};
  return make(std::move(n));
}

Formula Formula::cp_box(Formula ant, ClauseSet clause, Formula cons) {
  FormulaNode n;
  n.kind = Connective::CPBox;
  n.kids = {std::move(ant), std::move(cons)};
  n.clause = std::move(clause);
  return make(std::move(n));
}

Formula Formula::comp(CompKind k, ClauseSet clause, Formula l, Formula r) {
  if (k == CompKind::Plain && !clause.empty())
    throw std::invalid_argument("plain comparative takes no clause");
  FormulaNode n;
  n.kind = Connective::CompPoss;
  n.comp = k;
  n.kids = {std::move(l), std::move(r)};
  n.clause = std::move(clause);
  return make(std::move(n));
}

Formula Formula::top() { return lnot(bottom()); }

Formula Formula::land(Formula a, Formula b) {
  return lnot(lor(lnot(std::move(a)), lnot(std::move(b))));
}

Formula Formula::implies(Formula a, Formula b) {
  return lor(lnot(std::move(a)), std::move(b));
}

Formula Formula::cp_diamond(Formula ant, ClauseSet clause, Formula cons) {
  return lnot(cp_box(std::move(ant), std::move(clause), lnot(std::move(cons))));
}

Formula Formula::counterfactual(Formula a, Formula b) {
  return cp_box(std::move(a), ClauseSet{}, std::move(b));
}

Formula Formula::might_counterfactual(Formula a, Formula b) {
  return lnot(cp_box(std::move(a), ClauseSet{}, lnot(std::move(b))));
}

Formula Formula::comp_strict(CompKind k, ClauseSet clause, Formula l,
                             Formula r) {
  return lnot(comp(k, std::move(clause), std::move(r), std::move(l)));
}

Formula Formula::diamond(Formula f) {
  return comp_strict(CompKind::Plain, ClauseSet{}, std::move(f), bottom());
}

Formula Formula::box(Formula f) { return lnot(diamond(lnot(std::move(f)))); }

Connective Formula::kind() const { return node_->kind; }

const std::string& Formula::atom_name() const {
  if (node_->kind != Connective::Atom)
    throw std::logic_error("atom_name on non-atom");
  return node_->name;
}

const Formula& Formula::child(std::size_t i) const { return node_->kids.at(i); }

std::size_t Formula::arity() const { return node_->kids.size(); }

const ClauseSet& Formula::clause() const { return node_->clause; }

CompKind Formula::comp_kind() const {
  if (node_->kind != Connective::CompPoss)
    throw std::logic_error("comp_kind on non-comparative");
  return node_->comp;
}

bool Formula::operator==(const Formula& o) const {
  if (node_ == o.node_) return true;
  if (node_->kind != o.node_->kind) return false;
  switch (node_->kind) {
    case Connective::Atom:
      return node_->name == o.node_->name;
    case Connective::Bottom:
      return true;
    case Connective::Not:
      return node_->kids[0] == o.node_->kids[0];
    case Connective::Or:
    case Connective::CPBox:
      return node_->kids[0] == o.node_->kids[0] &&
             node_->kids[1] == o.node_->kids[1] &&
             (node_->kind != Connective::CPBox ||
              node_->clause == o.node_->clause);
    case Connective::CompPoss:
      return node_->comp == o.node_->comp &&
             node_->clause == o.node_->clause &&
             node_->kids[0] == o.node_->kids[0] &&
             node_->kids[1] == o.node_->kids[1];
  }
  return false;
}

const void* Formula::id() const { return node_.get(); }

// ---------------------------------------------------------------------------
// ClauseSet

ClauseSet::ClauseSet(std::vector<Formula> members) {
  std::vector<std::pair<std::string, Formula>> keyed;
  keyed.reserve(members.size());
  for (auto& m : members) keyed.emplace_back(render_formula(m), std::move(m));
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [key, f] : keyed) {
    if (!members_.empty() && members_.back() == f) continue;
    members_.push_back(std::move(f));
  }
}

bool ClauseSet::contains(const Formula& f) const {
  for (const auto& m : members_)
    if (m == f) return true;
  return false;
}

ClauseSet ClauseSet::with(const Formula& f) const {
  std::vector<Formula> ms = members_;
  ms.push_back(f);
  return ClauseSet(std::move(ms));
}

bool ClauseSet::operator==(const ClauseSet& o) const {
  if (members_.size() != o.members_.size()) return false;
  for (std::size_t i = 0; i < members_.size(); ++i)
    if (!(members_[i] == o.members_[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Printer
//
// Binding tiers, loosest first:
//   0  comparatives, cf>/mcf>, and the consequent position of [.,.] / <.,.>
//   1  ->        (right-associative)
//   2  |         (left-associative)
//   3  &         (left-associative)
//   4  ~
//   5  atoms, _|_, parenthesized forms, bracket prefixes
//
// Abbreviation shapes are printed back in sugared form where that is
// unambiguous: ~(~a | ~b) as a & b, ~a | b as a -> b, ~[a,{..}]~b as
// <a, {..}> b. Each sugar parses back to exactly the matched core shape, so
// parse(render(f)) == f holds throughout.

namespace {

constexpr int kComp = 0, kImp = 1, kOr = 2, kAnd = 3, kNot = 4;

void render(const Formula& f, int ctx, std::string& out);

void render_clause(const ClauseSet& c, std::string& out) {
  out += '{';
  bool first = true;
  for (const auto& m : c.members()) {
    if (!first) out += ", ";
    first = false;
    render(m, kComp, out);
  }
  out += '}';
}

bool match_and(const Formula& f, const Formula** a, const Formula** b) {
  if (f.kind() != Connective::Not) return false;
  const Formula& o = f.child(0);
  if (o.kind() != Connective::Or) return false;
  if (o.child(0).kind() != Connective::Not ||
      o.child(1).kind() != Connective::Not)
    return false;
  *a = &o.child(0).child(0);
  *b = &o.child(1).child(0);
  return true;
}

bool match_cp_diamond(const Formula& f) {
  return f.kind() == Connective::Not &&
         f.child(0).kind() == Connective::CPBox &&
         f.child(0).child(1).kind() == Connective::Not;
}

const char* comp_tag(CompKind k) {
  switch (k) {
    case CompKind::NC: return "nc";
    case CompKind::CP: return "cp";
    case CompKind::MS: return "ms";
    default: return "";
  }
}

void render(const Formula& f, int ctx, std::string& out) {
  switch (f.kind()) {
    case Connective::Atom:
      out += f.atom_name();
      return;
    case Connective::Bottom:
      out += "_|_";
      return;
    case Connective::Not: {
      const Formula *a, *b;
      if (match_and(f, &a, &b)) {
        bool paren = ctx > kAnd;
        if (paren) out += '(';
        render(*a, kAnd, out);
        out += " & ";
        render(*b, kAnd + 1, out);
        if (paren) out += ')';
        return;
      }
      if (match_cp_diamond(f)) {
        const Formula& box = f.child(0);
        bool paren = ctx > kComp;
        if (paren) out += '(';
        out += '<';
        render(box.child(0), kComp, out);
        out += ", ";
        render_clause(box.clause(), out);
        out += "> ";
        render(box.child(1).child(0), kComp, out);
        if (paren) out += ')';
        return;
      }
      bool paren = ctx > kNot;
      if (paren) out += '(';
      out += '~';
      render(f.child(0), kNot, out);
      if (paren) out += ')';
      return;
    }
    case Connective::Or: {
      if (f.child(0).kind() == Connective::Not) {
        // a -> b
        bool paren = ctx > kImp;
        if (paren) out += '(';
        render(f.child(0).child(0), kImp + 1, out);
        out += " -> ";
        render(f.child(1), kImp, out);
        if (paren) out += ')';
        return;
      }
      bool paren = ctx > kOr;
      if (paren) out += '(';
      render(f.child(0), kOr, out);
      out += " | ";
      render(f.child(1), kOr + 1, out);
      if (paren) out += ')';
      return;
    }
    case Connective::CPBox: {
      bool paren = ctx > kComp;
      if (paren) out += '(';
      out += '[';
      render(f.child(0), kComp, out);
      out += ", ";
      render_clause(f.clause(), out);
      out += "] ";
      render(f.child(1), kComp, out);
      if (paren) out += ')';
      return;
    }
    case Connective::CompPoss: {
      bool paren = ctx > kComp;
      if (paren) out += '(';
      render(f.child(0), kComp + 1, out);
      out += " =<";
      if (f.comp_kind() != CompKind::Plain) {
        render_clause(f.clause(), out);
        out += comp_tag(f.comp_kind());
      }
      out += ' ';
      render(f.child(1), kComp, out);
      if (paren) out += ')';
      return;
    }
  }
}

}  // namespace

std::string render_formula(const Formula& f) {
  std::string out;
  render(f, kComp, out);
  return out;
}

// ---------------------------------------------------------------------------
// Universe of discourse

namespace {

void collect_ud(const Formula& f, std::set<std::string>& acc) {
  switch (f.kind()) {
    case Connective::Atom:
      acc.insert(f.atom_name());
      return;
    case Connective::Bottom:
      return;
    default:
      for (std::size_t i = 0; i < f.arity(); ++i) collect_ud(f.child(i), acc);
      if (f.kind() == Connective::CPBox || f.kind() == Connective::CompPoss)
        for (const auto& m : f.clause().members()) collect_ud(m, acc);
      return;
  }
}

}  // namespace

std::set<std::string> universe_of_discourse(const Formula& f) {
  std::set<std::string> acc;
  collect_ud(f, acc);
  return acc;
}

std::set<std::string> universe_of_discourse(const ClauseSet& c) {
  std::set<std::string> acc;
  for (const auto& m : c.members()) collect_ud(m, acc);
  return acc;
}

ClauseSet von_wright_clause(const Formula& ant, const Formula& cons,
                            const std::set<std::string>& universe) {
  std::set<std::string> used = universe_of_discourse(ant);
  collect_ud(cons, used);
  std::vector<Formula> rest;
  for (const auto& p : universe)
    if (!used.count(p)) rest.push_back(Formula::atom(p));
  return ClauseSet(std::move(rest));
}

bool is_boolean(const Formula& f) {
  switch (f.kind()) {
    case Connective::Atom:
    case Connective::Bottom:
      return true;
    case Connective::Not:
      return is_boolean(f.child(0));
    case Connective::Or:
      return is_boolean(f.child(0)) && is_boolean(f.child(1));
    default:
      return false;
  }
}

bool is_lminus(const Formula& f) {
  switch (f.kind()) {
    case Connective::Atom:
    case Connective::Bottom:
      return true;
    case Connective::Not:
      return is_lminus(f.child(0));
    case Connective::Or:
      return is_lminus(f.child(0)) && is_lminus(f.child(1));
    case Connective::CompPoss:
      return f.comp_kind() == CompKind::Plain && is_lminus(f.child(0)) &&
             is_lminus(f.child(1));
    case Connective::CPBox:
      return false;
  }
  return false;
}

namespace {

constexpr std::size_t kSizeCap = std::size_t{1} << 60;

std::size_t sat_add(std::size_t a, std::size_t b) {
  std::size_t s = a + b;
  if (s < a || s > kSizeCap) return kSizeCap;
  return s;
}

std::size_t size_rec(const Formula& f, std::map<const void*, std::size_t>& memo) {
  auto it = memo.find(f.id());
  if (it != memo.end()) return it->second;
  std::size_t s = 1;
  for (std::size_t i = 0; i < f.arity(); ++i)
    s = sat_add(s, size_rec(f.child(i), memo));
  if (f.kind() == Connective::CPBox || f.kind() == Connective::CompPoss)
    for (const auto& m : f.clause().members())
      s = sat_add(s, size_rec(m, memo));
  memo[f.id()] = s;
  return s;
}

}  // namespace

std::size_t tree_size(const Formula& f) {
  std::map<const void*, std::size_t> memo;
  return size_rec(f, memo);
}

}  // namespace cpcf
