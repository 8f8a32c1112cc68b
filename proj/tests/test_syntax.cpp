#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"

#include "cpcf/formula.hpp"
#include "cpcf/generate.hpp"
#include "cpcf/parse.hpp"

using namespace cpcf;

namespace {
Formula P() { return Formula::atom("p"); }
Formula Q() { return Formula::atom("q"); }
Formula H() { return Formula::atom("h"); }
Formula M() { return Formula::atom("m"); }

ClauseSet clause(std::vector<Formula> fs) { return ClauseSet(std::move(fs)); }
}  // namespace

TEST_CASE("bracket conditional parses to a clause-indexed box") {
  Formula f = parse_formula("[p, {m}] h");
  REQUIRE(f.kind() == Connective::CPBox);
  CHECK(f.child(0) == P());
  CHECK(f.child(1) == H());
  CHECK(f.clause() == clause({M()}));
}

TEST_CASE("plain counterfactual is the empty-clause box") {
  Formula f = parse_formula("p cf> h");
  REQUIRE(f.kind() == Connective::CPBox);
  CHECK(f.clause().empty());
  CHECK(f == Formula::counterfactual(P(), H()));
  CHECK(f == parse_formula("[p, {}] h"));
}

TEST_CASE("plain comparative possibility parses with conjunction sides") {
  Formula f = parse_formula("(p & s) =< (p & ~s)");
  REQUIRE(f.kind() == Connective::CompPoss);
  CHECK(f.comp_kind() == CompKind::Plain);
  Formula s = Formula::atom("s");
  CHECK(f.child(0) == Formula::land(P(), s));
  CHECK(f.child(1) == Formula::land(P(), Formula::lnot(s)));
}

TEST_CASE("tagged comparatives carry their clause and kind") {
  Formula f = parse_formula("p =<{m}cp q");
  REQUIRE(f.kind() == Connective::CompPoss);
  CHECK(f.comp_kind() == CompKind::CP);
  CHECK(f.clause() == clause({M()}));
  CHECK(parse_formula("p =<{m}nc q").comp_kind() == CompKind::NC);
  CHECK(parse_formula("p =<{m}ms q").comp_kind() == CompKind::MS);
}

TEST_CASE("angle conditional is the dual of the bracket conditional") {
  CHECK(parse_formula("<p, {m}> h") ==
        Formula::lnot(Formula::cp_box(P(), clause({M()}), Formula::lnot(H()))));
  CHECK(parse_formula("<p, {m}> h") == Formula::cp_diamond(P(), clause({M()}), H()));
}

TEST_CASE("might counterfactual is the dual of the plain counterfactual") {
  CHECK(parse_formula("p mcf> h") ==
        Formula::lnot(Formula::counterfactual(P(), Formula::lnot(H()))));
}

TEST_CASE("precedence: negation, conjunction, disjunction, implication") {
  CHECK(parse_formula("~p & q -> r") ==
        Formula::implies(Formula::land(Formula::lnot(P()), Q()),
                         Formula::atom("r")));
  CHECK(parse_formula("p | q & r") ==
        Formula::lor(P(), Formula::land(Q(), Formula::atom("r"))));
  CHECK(parse_formula("p -> q -> r") ==
        Formula::implies(P(), Formula::implies(Q(), Formula::atom("r"))));
}

TEST_CASE("conditional arrows associate to the right") {
  CHECK(parse_formula("p cf> q cf> r") ==
        Formula::counterfactual(
            P(), Formula::counterfactual(Q(), Formula::atom("r"))));
}

TEST_CASE("renderer emits the canonical concrete forms") {
  CHECK(render_formula(Formula::cp_box(P(), clause({M()}), H())) ==
        "[p, {m}] h");
  CHECK(render_formula(Formula::lnot(Formula::lor(P(), Q()))) == "~(p | q)");
  CHECK(render_formula(Formula::cp_box(
            P(), clause({Formula::atom("s")}),
            Formula::cp_box(Q(), ClauseSet{}, Formula::atom("r")))) ==
        "[p, {s}] [q, {}] r");
  CHECK(render_formula(Formula::land(P(), Q())) == "p & q");
  CHECK(render_formula(Formula::top()) == "~_|_");
  CHECK(render_formula(Formula::bottom()) == "_|_");
}

TEST_CASE("round trip: parse after render is the identity") {
  std::mt19937_64 eng(2024);
  std::vector<std::string> atoms = {"p", "q", "r"};
  for (int i = 0; i < 10000; ++i) {
    Formula f = random_formula(eng, atoms, 5, 2);
    std::string text = render_formula(f);
    CAPTURE(text);
    Formula g = parse_formula(text);
    REQUIRE(g == f);
    REQUIRE(render_formula(g) == text);
  }
}

TEST_CASE("universe of discourse collects atoms from every position") {
  CHECK(universe_of_discourse(P()) == std::set<std::string>{"p"});
  CHECK(universe_of_discourse(parse_formula("[p, {m}] h")) ==
        std::set<std::string>({"h", "m", "p"}));
  CHECK(universe_of_discourse(parse_formula("~(p | q)")) ==
        std::set<std::string>({"p", "q"}));
  CHECK(universe_of_discourse(parse_formula("p =<{q}nc r")) ==
        std::set<std::string>({"p", "q", "r"}));
}

namespace {
void collect_subformulas(const Formula& f, std::vector<Formula>& out) {
  out.push_back(f);
  for (std::size_t i = 0; i < f.arity(); ++i)
    collect_subformulas(f.child(i), out);
  if (f.kind() == Connective::CPBox ||
      (f.kind() == Connective::CompPoss && f.comp_kind() != CompKind::Plain)) {
    for (const Formula& g : f.clause().members()) collect_subformulas(g, out);
  }
}
}  // namespace

TEST_CASE("universe of discourse is monotone over subformulas") {
  std::mt19937_64 eng(7);
  std::vector<std::string> atoms = {"p", "q", "r", "s"};
  for (int i = 0; i < 500; ++i) {
    Formula f = random_formula(eng, atoms, 4, 2);
    std::set<std::string> whole = universe_of_discourse(f);
    std::vector<Formula> subs;
    collect_subformulas(f, subs);
    for (const Formula& g : subs) {
      for (const std::string& a : universe_of_discourse(g)) {
        REQUIRE(whole.count(a) == 1);
      }
    }
  }
}

TEST_CASE("everything-else clause fixes exactly the unmentioned atoms") {
  std::set<std::string> u = {"p", "s", "m", "h"};
  ClauseSet c = von_wright_clause(P(), H(), u);
  CHECK(c == clause({M(), Formula::atom("s")}));

  CHECK(von_wright_clause(P(), P(), {"p"}).empty());
  CHECK(von_wright_clause(Formula::lor(P(), Q()), Formula::atom("r"),
                          {"p", "q", "r", "t"}) == clause({Formula::atom("t")}));
}

TEST_CASE("everything-else clause never overlaps the conditional's atoms") {
  std::mt19937_64 eng(99);
  std::vector<std::string> atoms = {"p", "q", "r", "s"};
  std::set<std::string> u(atoms.begin(), atoms.end());
  for (int i = 0; i < 300; ++i) {
    Formula a = random_boolean_formula(eng, atoms, 3);
    Formula b = random_boolean_formula(eng, atoms, 3);
    std::set<std::string> used = universe_of_discourse(a);
    for (const std::string& s : universe_of_discourse(b)) used.insert(s);
    ClauseSet rest = von_wright_clause(a, b, u);
    for (const Formula& g : rest.members()) {
      REQUIRE(g.kind() == Connective::Atom);
      REQUIRE(used.count(g.atom_name()) == 0);
    }
  }
}

TEST_CASE("clause sets deduplicate and order canonically") {
  Formula f = parse_formula("[p, {m, m}] h");
  CHECK(f.clause().size() == 1);
  CHECK(parse_formula("[p, {s, m}] h") == parse_formula("[p, {m, s}] h"));
  CHECK(render_formula(parse_formula("[p, {s, m}] h")) == "[p, {m, s}] h");

  ClauseSet c = clause({Q(), P(), Q()});
  REQUIRE(c.size() == 2);
  CHECK(c.members()[0] == P());
  CHECK(c.members()[1] == Q());
  CHECK(c.contains(Q()));
  CHECK(!c.contains(H()));
  CHECK(c.with(H()).size() == 3);
  CHECK(c.with(P()) == c);
}

TEST_CASE("bare clause sets parse for command-line use") {
  ClauseSet c = parse_clause_set("{m, s}");
  CHECK(c == clause({M(), Formula::atom("s")}));
  CHECK(parse_clause_set("{}").empty());
  CHECK(parse_clause_set(" { ~p , q } ") ==
        clause({Formula::lnot(P()), Q()}));
}

TEST_CASE("syntax errors carry a position") {
  CHECK_THROWS_AS(parse_formula("[p,{m} h"), ParseError);
  CHECK_THROWS_AS(parse_formula(""), ParseError);
  CHECK_THROWS_AS(parse_formula("p =<{m}xx q"), ParseError);
  CHECK_THROWS_AS(parse_formula("p &"), ParseError);
  CHECK_THROWS_AS(parse_formula("(p"), ParseError);
  CHECK_THROWS_AS(parse_clause_set("{p,}"), ParseError);
  try {
    parse_formula("p & & q");
  } catch (const ParseError& e) {
    CHECK(e.position > 0);
    CHECK(std::string(e.what()).find("offset") != std::string::npos);
  }
}

TEST_CASE("abbreviations expand into the core connectives") {
  CHECK(Formula::top() == Formula::lnot(Formula::bottom()));
  CHECK(Formula::land(P(), Q()) ==
        Formula::lnot(Formula::lor(Formula::lnot(P()), Formula::lnot(Q()))));
  CHECK(Formula::implies(P(), Q()) == Formula::lor(Formula::lnot(P()), Q()));
  CHECK(Formula::diamond(P()) ==
        Formula::lnot(Formula::comp(CompKind::Plain, ClauseSet{},
                                    Formula::bottom(), P())));
  CHECK(Formula::box(P()) ==
        Formula::lnot(Formula::diamond(Formula::lnot(P()))));
  CHECK(Formula::comp_strict(CompKind::Plain, ClauseSet{}, P(), Q()) ==
        Formula::lnot(Formula::comp(CompKind::Plain, ClauseSet{}, Q(), P())));
}

TEST_CASE("boolean and plain-fragment predicates") {
  CHECK(is_boolean(parse_formula("~(p | q) & r -> s")));
  CHECK(!is_boolean(parse_formula("p cf> q")));
  CHECK(!is_boolean(parse_formula("p =< q")));
  CHECK(is_lminus(parse_formula("p =< q | ~(_|_ =< p)")));
  CHECK(!is_lminus(parse_formula("p =<{m}cp q")));
  CHECK(!is_lminus(parse_formula("[p, {}] q")));
}
