#include <algorithm>
#include <string>
#include <vector>

#include "doctest.h"

#include "cpcf/builtin.hpp"
#include "cpcf/dynamics.hpp"
#include "cpcf/generate.hpp"
#include "cpcf/model_io.hpp"
#include "cpcf/parse.hpp"
#include "cpcf/semantics.hpp"

using namespace cpcf;

namespace {
std::vector<std::string> rank_names(const ConditionalModel& m, int center) {
  std::vector<std::string> out;
  for (const auto& rank : m.order_at(center).ranks()) {
    std::string r;
    for (int w : rank) {
      if (!r.empty()) r += " ";
      r += m.worlds[static_cast<std::size_t>(w)];
    }
    out.push_back(r);
  }
  return out;
}
const std::vector<Interpretation> kAll = {Interpretation::CP,
                                          Interpretation::NC,
                                          Interpretation::MS};
}  // namespace

TEST_CASE("class-restricted update drops the disagreeing worlds") {
  ConditionalModel fine = builtin_model("fine");
  ConditionalModel up =
      update(fine, parse_clause_set("{m}"), Interpretation::CP);
  int w = up.require_world("w");
  CHECK(rank_names(up, w) == std::vector<std::string>({"w", "u1", "u2"}));
  CHECK(up.order_at(w).domain() ==
        std::vector<int>({w, up.require_world("u1"), up.require_world("u2")}));
  // Worlds with trivial orders are untouched.
  CHECK(up.order_at(up.require_world("v1")).domain() ==
        std::vector<int>({up.require_world("v1")}));
  CHECK(up.valuation == fine.valuation);
  CHECK(up.worlds == fine.worlds);
}

TEST_CASE("counting update with the full clause reproduces the model") {
  ConditionalModel fine = builtin_model("fine");
  ConditionalModel up =
      update(fine, parse_clause_set("{m, s}"), Interpretation::NC);
  CHECK(render_model(up) == render_model(fine));
  CHECK(rank_names(up, up.require_world("w")) ==
        std::vector<std::string>({"w", "v1", "v2", "u1", "u2"}));
}

TEST_CASE("updating with the empty clause is the identity") {
  for (const std::string& name : builtin_model_names()) {
    ConditionalModel m = builtin_model(name);
    for (Interpretation x : kAll) {
      ConditionalModel up = update(m, ClauseSet{}, x);
      CHECK(render_model(up) == render_model(m));
    }
  }
}

TEST_CASE("class-restricted updates are idempotent for boolean clauses") {
  GeneratorParams p;
  std::vector<std::string> atoms = {"p", "q", "r"};
  for (int t = 0; t < 200; ++t) {
    p.seed = 4000 + static_cast<std::uint64_t>(t);
    ConditionalModel m = random_model(p);
    std::mt19937_64 eng(p.seed ^ 0x5u);
    ClauseSet clause = random_clause(eng, atoms, 2);
    ConditionalModel once = update(m, clause, Interpretation::CP);
    ConditionalModel twice = update(once, clause, Interpretation::CP);
    REQUIRE(render_model(twice) == render_model(once));
  }
}

TEST_CASE("class-restricted updates never enlarge an entertainable set") {
  GeneratorParams p;
  std::vector<std::string> atoms = {"p", "q", "r"};
  for (int t = 0; t < 200; ++t) {
    p.seed = 4500 + static_cast<std::uint64_t>(t);
    ConditionalModel m = random_model(p);
    std::mt19937_64 eng(p.seed ^ 0x6u);
    ClauseSet clause = random_clause(eng, atoms, 2);
    ConditionalModel up = update(m, clause, Interpretation::CP);
    for (std::size_t w = 0; w < m.worlds.size(); ++w) {
      const auto& before = m.order_at(static_cast<int>(w)).domain();
      for (int v : up.order_at(static_cast<int>(w)).domain()) {
        REQUIRE(std::find(before.begin(), before.end(), v) != before.end());
      }
    }
  }
}

TEST_CASE("static conditional truth equals truth after the update") {
  ConditionalModel fine = builtin_model("fine");
  CHECK(check_dynamic_static_agreement(fine, "w", parse_formula("p"),
                                       parse_clause_set("{m}"),
                                       parse_formula("h"),
                                       Interpretation::CP));
  ConditionalModel up =
      update(fine, parse_clause_set("{m}"), Interpretation::CP);
  CHECK(satisfies(up, "w", parse_formula("p cf> h"), Interpretation::CP));
  CHECK(satisfies(fine, "w", parse_formula("[p, {m}] h"), Interpretation::CP));
}

TEST_CASE("agreement checking requires modality-free conditionals") {
  ConditionalModel noiter = builtin_model("noiter");
  CHECK_THROWS_AS(
      check_dynamic_static_agreement(noiter, "w", parse_formula("p"),
                                     parse_clause_set("{s}"),
                                     parse_formula("[q, {}] r"),
                                     Interpretation::CP),
      std::invalid_argument);
  CHECK_THROWS_AS(
      check_dynamic_static_agreement(noiter, "w", parse_formula("p cf> q"),
                                     parse_clause_set("{s}"),
                                     parse_formula("r"), Interpretation::CP),
      std::invalid_argument);
}

TEST_CASE("nested conditionals do not survive as iterated updates") {
  ConditionalModel noiter = builtin_model("noiter");
  // Statically the nested conditional holds...
  CHECK(satisfies(noiter, "w", parse_formula("[p, {s}] [q, {}] r"),
                  Interpretation::CP));
  // ...but after performing the update it fails.
  ConditionalModel up =
      update(noiter, parse_clause_set("{s}"), Interpretation::CP);
  CHECK(!satisfies(up, "w", parse_formula("p cf> [q, {}] r"),
                   Interpretation::CP));
  // The update reshapes both non-trivial orders.
  CHECK(rank_names(up, up.require_world("w")) ==
        std::vector<std::string>({"w", "u", "v1"}));
  CHECK(rank_names(up, up.require_world("u")) ==
        std::vector<std::string>({"u", "v1", "w"}));
}

TEST_CASE("superset updates can produce partial orders that serialize") {
  ConditionalModel fine = builtin_model("fine");
  ConditionalModel up =
      update(fine, parse_clause_set("{m, s}"), Interpretation::MS);
  int w = up.require_world("w");
  REQUIRE(!up.order_at(w).is_ranked());
  int u1 = up.require_world("u1");
  int v1 = up.require_world("v1");
  CHECK(!up.order_at(w).leq(u1, v1));
  CHECK(!up.order_at(w).leq(v1, u1));
  CHECK(up.order_at(w).leq(w, u1));

  ValidationReport strict = validate_model(up, ValidationMode::Strict);
  CHECK(!strict.ok());
  CHECK(validate_model(up, ValidationMode::AllowPartial).ok());

  std::string text = render_model(up);
  CHECK(text.find("order-pairs w:") != std::string::npos);
  ConditionalModel back = parse_model(text, ValidationMode::AllowPartial);
  REQUIRE(!back.order_at(w).is_ranked());
  for (std::size_t a = 0; a < up.worlds.size(); ++a) {
    for (std::size_t b = 0; b < up.worlds.size(); ++b) {
      bool in_up = up.order_at(w).contains(static_cast<int>(a)) &&
                   up.order_at(w).contains(static_cast<int>(b)) &&
                   up.order_at(w).leq(static_cast<int>(a),
                                      static_cast<int>(b));
      bool in_back = back.order_at(w).contains(static_cast<int>(a)) &&
                     back.order_at(w).contains(static_cast<int>(b)) &&
                     back.order_at(w).leq(static_cast<int>(a),
                                          static_cast<int>(b));
      REQUIRE(in_up == in_back);
    }
  }
}

TEST_CASE("plain counterfactuals on partial orders use minimal elements") {
  ConditionalModel fine = builtin_model("fine");
  ConditionalModel up =
      update(fine, parse_clause_set("{m, s}"), Interpretation::MS);
  // Both minimal p-worlds survive, so neither consequent is forced.
  CHECK(!satisfies(up, "w", parse_formula("p cf> h"), Interpretation::MS));
  CHECK(!satisfies(up, "w", parse_formula("p cf> ~h"), Interpretation::MS));
  CHECK(satisfies(up, "w", parse_formula("p cf> (h | m)"),
                  Interpretation::MS));
}

TEST_CASE("updates agree with static evaluation across readings at random") {
  GeneratorParams p;
  std::vector<std::string> atoms = {"p", "q", "r"};
  for (int t = 0; t < 150; ++t) {
    p.seed = 6000 + static_cast<std::uint64_t>(t);
    ConditionalModel m = random_model(p);
    std::mt19937_64 eng(p.seed ^ 0x7u);
    Formula ant = random_boolean_formula(eng, atoms, 2);
    Formula cons = random_boolean_formula(eng, atoms, 2);
    ClauseSet clause = random_clause(eng, atoms, 2);
    for (Interpretation x : kAll) {
      for (const std::string& w : m.worlds) {
        REQUIRE(check_dynamic_static_agreement(m, w, ant, clause, cons, x));
      }
    }
  }
}
