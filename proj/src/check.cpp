#include "cpcf/check.hpp"

#include <chrono>
#include <functional>
#include <stdexcept>

#include "cpcf/builtin.hpp"
#include "cpcf/dynamics.hpp"
#include "cpcf/model_io.hpp"
#include "cpcf/semantics.hpp"
#include "cpcf/translate.hpp"

namespace cpcf {

namespace {

constexpr int kMaxStoredFailures = 8;

// ---------------------------------------------------------------------------
// Independent oracle: straight-from-the-definitions recursion with no
// caching, no extension vectors, and no realized relation matrices. The
// library must agree with this on every instance.

RelKind kind_for(Interpretation x) {
  switch (x) {
    case Interpretation::CP: return RelKind::CPRestricted;
    case Interpretation::NC: return RelKind::Counting;
    case Interpretation::MS: return RelKind::Superset;
  }
  return RelKind::Base;
}

RelKind kind_for(CompKind k) {
  switch (k) {
    case CompKind::Plain: return RelKind::Base;
    case CompKind::CP: return RelKind::CPRestricted;
    case CompKind::NC: return RelKind::Counting;
    case CompKind::MS: return RelKind::Superset;
  }
  return RelKind::Base;
}

bool osat(const ConditionalModel& m, int w, const Formula& f,
          Interpretation x);

bool oin_class(const ConditionalModel& m, const ClauseSet& clause, int center,
               int u, Interpretation x) {
  for (const Formula& g : clause.members())
    if (osat(m, u, g, x) != osat(m, center, g, x)) return false;
  return true;
}

int oagreement_count(const ConditionalModel& m, const ClauseSet& clause,
                     int center, int u, Interpretation x) {
  int n = 0;
  for (const Formula& g : clause.members())
    if (osat(m, u, g, x) == osat(m, center, g, x)) ++n;
  return n;
}

std::vector<bool> oagreement_bits(const ConditionalModel& m,
                                  const ClauseSet& clause, int center, int u,
                                  Interpretation x) {
  std::vector<bool> bits;
  bits.reserve(clause.size());
  for (const Formula& g : clause.members())
    bits.push_back(osat(m, u, g, x) == osat(m, center, g, x));
  return bits;
}

std::vector<int> odomain(const ConditionalModel& m, RelKind kind,
                         const ClauseSet& clause, int center,
                         Interpretation x) {
  const SimilarityOrder& o = m.order_at(center);
  if (kind != RelKind::CPRestricted) return o.domain();
  std::vector<int> dom;
  for (int u : o.domain())
    if (oin_class(m, clause, center, u, x)) dom.push_back(u);
  return dom;
}

bool oleq(const ConditionalModel& m, RelKind kind, const ClauseSet& clause,
          int center, int u, int v, Interpretation x) {
  const SimilarityOrder& o = m.order_at(center);
  switch (kind) {
    case RelKind::Base:
      return o.leq(u, v);
    case RelKind::CPRestricted:
      return oin_class(m, clause, center, u, x) &&
             oin_class(m, clause, center, v, x) && o.leq(u, v);
    case RelKind::Counting: {
      int au = oagreement_count(m, clause, center, u, x);
      int av = oagreement_count(m, clause, center, v, x);
      return au > av || (au == av && o.leq(u, v));
    }
    case RelKind::Superset: {
      std::vector<bool> au = oagreement_bits(m, clause, center, u, x);
      std::vector<bool> av = oagreement_bits(m, clause, center, v, x);
      bool v_sub_u = true, equal = true;
      for (std::size_t i = 0; i < au.size(); ++i) {
        if (av[i] && !au[i]) v_sub_u = false;
        if (au[i] != av[i]) equal = false;
      }
      if (v_sub_u && !equal) return true;
      return equal && o.leq(u, v);
    }
  }
  return false;
}

WorldSet oracle_min(const ConditionalModel& m, const RelationSpec& spec,
                    const WorldSet& S) {
  std::vector<int> cand;
  for (int u : odomain(m, spec.kind, spec.clause, spec.center, spec.interp))
    if (S[u]) cand.push_back(u);
  WorldSet out = m.empty_set();
  for (int v : cand) {
    bool minimal = true;
    for (int u : cand)
      if (oleq(m, spec.kind, spec.clause, spec.center, u, v, spec.interp) &&
          !oleq(m, spec.kind, spec.clause, spec.center, v, u, spec.interp)) {
        minimal = false;
        break;
      }
    if (minimal) out[v] = true;
  }
  return out;
}

bool osat(const ConditionalModel& m, int w, const Formula& f,
          Interpretation x) {
  switch (f.kind()) {
    case Connective::Atom: {
      auto it = m.valuation.find(f.atom_name());
      return it != m.valuation.end() && it->second[w];
    }
    case Connective::Bottom:
      return false;
    case Connective::Not:
      return !osat(m, w, f.child(0), x);
    case Connective::Or:
      return osat(m, w, f.child(0), x) || osat(m, w, f.child(1), x);
    case Connective::CPBox: {
      RelKind kind = kind_for(x);
      std::vector<int> dom = odomain(m, kind, f.clause(), w, x);
      std::vector<int> ant;
      for (int u : dom)
        if (osat(m, u, f.child(0), x)) ant.push_back(u);
      for (int v : ant) {
        bool minimal = true;
        for (int u : ant)
          if (oleq(m, kind, f.clause(), w, u, v, x) &&
              !oleq(m, kind, f.clause(), w, v, u, x)) {
            minimal = false;
            break;
          }
        if (minimal && !osat(m, v, f.child(1), x)) return false;
      }
      return true;
    }
    case Connective::CompPoss: {
      RelKind kind = kind_for(f.comp_kind());
      std::vector<int> dom = odomain(m, kind, f.clause(), w, x);
      for (int u : dom) {
        if (!osat(m, u, f.child(1), x)) continue;
        bool matched = false;
        for (int v : dom)
          if (osat(m, v, f.child(0), x) &&
              oleq(m, kind, f.clause(), w, v, u, x)) {
            matched = true;
            break;
          }
        if (!matched) return false;
      }
      return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Harness scaffolding

struct Run {
  CheckReport rep;
  std::chrono::steady_clock::time_point t0 =
      std::chrono::steady_clock::now();

  bool full() const {
    return static_cast<int>(rep.failures.size()) >= kMaxStoredFailures;
  }

  void fail(const ConditionalModel& m, const std::string& world,
            const std::string& formula, const std::string& detail,
            Interpretation x) {
    if (full()) return;
    CheckFailure f;
    f.model_text = render_model(m);
    f.world = world;
    f.formula = formula;
    f.detail = detail;
    f.repro = "cpcf eval --model - --world " + world + " --sem " +
              interpretation_name(x) + " '" + formula + "' <<'CPM'\n" +
              f.model_text + "CPM";
    rep.failures.push_back(std::move(f));
  }

  CheckReport finish() {
    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return rep;
  }
};

std::vector<std::string> model_atoms(const ConditionalModel& m) {
  std::vector<std::string> atoms;
  for (const auto& [p, ext] : m.valuation) atoms.push_back(p);
  return atoms;
}

// Runs fn over the exhaustive small-model sweep (when asked) and then over
// `trials` seeded random models. fn gets a per-instance engine; instances
// are independent and reproducible.
void for_models(Run& run, int trials, const GeneratorParams& params,
                bool include_enumerated, int instances_per_enumerated,
                const std::function<void(const ConditionalModel&,
                                         std::mt19937_64&)>& fn) {
  std::uint64_t salt = 0x9e3779b97f4a7c15ULL;
  if (include_enumerated) {
    std::uint64_t idx = 0;
    for (int n = 1; n <= 3; ++n)
      for (int k = 0; k <= 2; ++k)
        for (const ConditionalModel& m : enumerate_models(n, k))
          for (int i = 0; i < instances_per_enumerated; ++i) {
            if (run.full()) return;
            std::mt19937_64 eng(params.seed ^ (salt * ++idx));
            fn(m, eng);
            ++run.rep.trials;
          }
  }
  for (int t = 0; t < trials; ++t) {
    if (run.full()) return;
    GeneratorParams p = params;
    p.seed = params.seed + static_cast<std::uint64_t>(t);
    ConditionalModel m = random_model(p);
    std::mt19937_64 eng(p.seed ^ salt);
    fn(m, eng);
    ++run.rep.trials;
  }
}

Formula draw_boolean(std::mt19937_64& eng, const ConditionalModel& m,
                     int depth = 2) {
  return random_boolean_formula(eng, model_atoms(m), depth);
}

ClauseSet draw_clause(std::mt19937_64& eng, const ConditionalModel& m,
                      int max_size = 2) {
  return random_clause(eng, model_atoms(m), max_size);
}

// ---------------------------------------------------------------------------
// Fact properties

// Empty-clause conditionals mean the same thing under every reading.
void fact_recovery(Run& run, int trials, const GeneratorParams& params,
                   Interpretation x) {
  for_models(run, trials, params, true, 2,
             [&](const ConditionalModel& m, std::mt19937_64& eng) {
               Formula f = Formula::cp_box(draw_boolean(eng, m), ClauseSet{},
                                           draw_boolean(eng, m));
               Evaluator under_x(m, x);
               Evaluator under_cp(m, Interpretation::CP);
               for (std::size_t w = 0; w < m.worlds.size(); ++w) {
                 bool a = under_x.satisfies(static_cast<int>(w), f);
                 bool b = under_cp.satisfies(static_cast<int>(w), f);
                 if (a != b)
                   run.fail(m, m.worlds[w], render_formula(f),
                            std::string("empty-clause conditional disagrees "
                                        "across readings: ") +
                                interpretation_name(x) + "=" +
                                (a ? "true" : "false") +
                                " vs cp=" + (b ? "true" : "false"),
                            x);
               }
             });
}

// (±α ∧ <φ,Γ>(±α ∧ ψ)) → <φ, Γ∪{α}>ψ is valid.
void fact_strengthen(Run& run, int trials, const GeneratorParams& params,
                     Interpretation x) {
  for_models(
      run, trials, params, true, 2,
      [&](const ConditionalModel& m, std::mt19937_64& eng) {
        Formula phi = draw_boolean(eng, m);
        Formula psi = draw_boolean(eng, m);
        Formula alpha = draw_boolean(eng, m, 1);
        ClauseSet clause = draw_clause(eng, m);
        for (bool positive : {true, false}) {
          Formula a = positive ? alpha : Formula::lnot(alpha);
          Formula lhs = Formula::land(
              a, Formula::cp_diamond(phi, clause, Formula::land(a, psi)));
          Formula rhs = Formula::cp_diamond(phi, clause.with(alpha), psi);
          Formula law = Formula::implies(lhs, rhs);
          Evaluator ev(m, x);
          for (std::size_t w = 0; w < m.worlds.size(); ++w)
            if (!ev.satisfies(static_cast<int>(w), law))
              run.fail(m, m.worlds[w], render_formula(law),
                       "clause-strengthening law fails", x);
        }
      });
}

// Might-conditionals transfer from the class-restricted reading to x;
// conditionals transfer from x back to the class-restricted reading.
void fact_bridge(Run& run, int trials, const GeneratorParams& params,
                 Interpretation x, bool diamond_direction) {
  for_models(
      run, trials, params, true, 2,
      [&](const ConditionalModel& m, std::mt19937_64& eng) {
        Formula phi = draw_boolean(eng, m);
        Formula psi = draw_boolean(eng, m);
        ClauseSet clause = draw_clause(eng, m);
        Formula f = diamond_direction
                        ? Formula::cp_diamond(phi, clause, psi)
                        : Formula::cp_box(phi, clause, psi);
        Evaluator under_x(m, x);
        Evaluator under_cp(m, Interpretation::CP);
        for (std::size_t w = 0; w < m.worlds.size(); ++w) {
          int wi = static_cast<int>(w);
          bool cp = under_cp.satisfies(wi, f);
          bool xs = under_x.satisfies(wi, f);
          bool holds = diamond_direction ? (!cp || xs) : (!xs || cp);
          if (!holds)
            run.fail(m, m.worlds[w], render_formula(f),
                     diamond_direction
                         ? std::string("cp-true might-conditional is not ") +
                               interpretation_name(x) + "-true"
                         : std::string(interpretation_name(x)) +
                               "-true conditional is not cp-true",
                     x);
        }
      });
}

// ---------------------------------------------------------------------------
// Lemma properties

void lemma_lowering(Run& run, int trials, const GeneratorParams& params,
                    Interpretation x) {
  for_models(
      run, trials, params, true, 2,
      [&](const ConditionalModel& m, std::mt19937_64& eng) {
        Formula phi = draw_boolean(eng, m);
        Formula psi = draw_boolean(eng, m);
        ClauseSet clause = draw_clause(eng, m);
        Formula box = Formula::cp_box(phi, clause, psi);
        Formula lowered = lower_cp_modality(phi, clause, psi, x);
        Formula compiled = translate_full(box, x);
        if (!is_lminus(compiled)) {
          run.fail(m, m.worlds[0], render_formula(compiled),
                   "compiled formula leaves the plain fragment", x);
          return;
        }
        Evaluator ev(m, x);
        for (std::size_t w = 0; w < m.worlds.size(); ++w) {
          int wi = static_cast<int>(w);
          bool direct = ev.satisfies(wi, box);
          bool low = ev.satisfies(wi, lowered);
          bool comp = ev.satisfies(wi, compiled);
          if (direct != low)
            run.fail(m, m.worlds[w], render_formula(box),
                     "lowered form disagrees: direct=" +
                         std::string(direct ? "true" : "false") +
                         " lowered=" + (low ? "true" : "false") +
                         "  lowered formula: " + render_formula(lowered),
                     x);
          if (direct != comp)
            run.fail(m, m.worlds[w], render_formula(box),
                     "compiled form disagrees: direct=" +
                         std::string(direct ? "true" : "false") +
                         " compiled=" + (comp ? "true" : "false") +
                         "  compiled formula: " + render_formula(compiled),
                     x);
        }
      });
}

void lemma_elimination(Run& run, int trials, const GeneratorParams& params,
                       CompKind kind) {
  for_models(
      run, trials, params, true, 2,
      [&](const ConditionalModel& m, std::mt19937_64& eng) {
        Formula l = draw_boolean(eng, m);
        Formula r = draw_boolean(eng, m);
        ClauseSet clause = draw_clause(eng, m);
        Formula comp = Formula::comp(kind, clause, l, r);
        Formula elim = [&] {
          switch (kind) {
            case CompKind::CP: return eliminate_cp_order(l, clause, r);
            case CompKind::MS: return eliminate_ms_order(l, clause, r);
            case CompKind::NC: return eliminate_nc_order(l, clause, r);
            default:
              throw std::logic_error("plain comparative in elimination");
          }
        }();
        Interpretation x = kind == CompKind::CP   ? Interpretation::CP
                           : kind == CompKind::MS ? Interpretation::MS
                                                  : Interpretation::NC;
        Formula compiled = translate_full(comp, x);
        if (!is_lminus(elim) || !is_lminus(compiled)) {
          run.fail(m, m.worlds[0], render_formula(comp),
                   "eliminated formula leaves the plain fragment", x);
          return;
        }
        Evaluator ev(m, x);
        for (std::size_t w = 0; w < m.worlds.size(); ++w) {
          int wi = static_cast<int>(w);
          bool direct = ev.satisfies(wi, comp);
          bool elimv = ev.satisfies(wi, elim);
          bool compv = ev.satisfies(wi, compiled);
          if (direct != elimv)
            run.fail(m, m.worlds[w], render_formula(comp),
                     "eliminated form disagrees: direct=" +
                         std::string(direct ? "true" : "false") +
                         " eliminated=" + (elimv ? "true" : "false") +
                         "  eliminated formula: " + render_formula(elim),
                     x);
          if (direct != compv)
            run.fail(m, m.worlds[w], render_formula(comp),
                     "compiled form disagrees: direct=" +
                         std::string(direct ? "true" : "false") +
                         " compiled=" + (compv ? "true" : "false"),
                     x);
        }
      });
}

// ---------------------------------------------------------------------------
// Remaining properties

void dyn_static(Run& run, int trials, const GeneratorParams& params) {
  for (Interpretation x :
       {Interpretation::CP, Interpretation::NC, Interpretation::MS}) {
    GeneratorParams p = params;
    p.seed = params.seed + 7919 * static_cast<std::uint64_t>(x);
    for_models(run, trials, p, false, 0,
               [&](const ConditionalModel& m, std::mt19937_64& eng) {
                 Formula phi = draw_boolean(eng, m);
                 Formula psi = draw_boolean(eng, m);
                 ClauseSet clause = draw_clause(eng, m);
                 std::string w = m.worlds[eng() % m.worlds.size()];
                 if (!check_dynamic_static_agreement(m, w, phi, clause, psi,
                                                     x)) {
                   Formula box = Formula::cp_box(phi, clause, psi);
                   run.fail(m, w, render_formula(box),
                            "static truth differs from update-then-evaluate",
                            x);
                 }
               });
  }
}

void equiv_gamma(Run& run, int trials, const GeneratorParams& params) {
  for_models(
      run, trials, params, true, 1,
      [&](const ConditionalModel& m, std::mt19937_64& eng) {
        ClauseSet clause = draw_clause(eng, m);
        Evaluator ev(m, Interpretation::CP);
        int n = static_cast<int>(m.worlds.size());
        auto agree = [&](int u, int v) {
          return ev.agreement_set(clause, u, v).size() == clause.size();
        };
        for (int u = 0; u < n; ++u) {
          if (!agree(u, u))
            run.fail(m, m.worlds[u], "{agreement}", "not reflexive",
                     Interpretation::CP);
          for (int v = 0; v < n; ++v) {
            if (agree(u, v) != agree(v, u))
              run.fail(m, m.worlds[u], "{agreement}", "not symmetric",
                       Interpretation::CP);
            for (int z = 0; z < n; ++z)
              if (agree(u, v) && agree(v, z) && !agree(u, z))
                run.fail(m, m.worlds[u], "{agreement}", "not transitive",
                         Interpretation::CP);
          }
        }
      });
}

void min_oracle(Run& run, int trials, const GeneratorParams& params) {
  for_models(
      run, trials, params, true, 1,
      [&](const ConditionalModel& m, std::mt19937_64& eng) {
        ClauseSet clause = draw_clause(eng, m);
        int center = static_cast<int>(eng() % m.worlds.size());
        WorldSet S = m.empty_set();
        for (std::size_t i = 0; i < S.size(); ++i) S[i] = (eng() % 2) == 1;
        for (RelKind kind : {RelKind::Base, RelKind::CPRestricted,
                             RelKind::Counting, RelKind::Superset}) {
          RelationSpec spec{kind, clause, center, Interpretation::CP};
          WorldSet lib = min_worlds(m, spec, S);
          WorldSet orc = oracle_min(m, spec, S);
          if (lib != orc)
            run.fail(m, m.worlds[center], "min(" + m.world_set_names(S) + ")",
                     "library minimal set " + m.world_set_names(lib) +
                         " differs from oracle " + m.world_set_names(orc) +
                         " (relation kind " + std::to_string(int(kind)) + ")",
                     Interpretation::CP);
        }
      });
}

void nixon_table(Run& run) {
  ConditionalModel fine = builtin_model("fine");
  Formula p = Formula::atom("p");
  Formula h = Formula::atom("h");
  ClauseSet just_m{{Formula::atom("m")}};
  ClauseSet m_and_s{{Formula::atom("m"), Formula::atom("s")}};

  struct Cell {
    const ClauseSet& clause;
    bool negated;
    Interpretation x;
    bool expected;
  };
  const Cell cells[] = {
      {just_m, false, Interpretation::CP, true},
      {just_m, false, Interpretation::NC, true},
      {just_m, false, Interpretation::MS, true},
      {m_and_s, false, Interpretation::CP, true},
      {m_and_s, false, Interpretation::NC, false},
      {m_and_s, false, Interpretation::MS, false},
      {just_m, true, Interpretation::CP, false},
      {just_m, true, Interpretation::NC, false},
      {just_m, true, Interpretation::MS, false},
      {m_and_s, true, Interpretation::CP, true},
      {m_and_s, true, Interpretation::NC, true},
      {m_and_s, true, Interpretation::MS, false},
  };
  for (const Cell& c : cells) {
    ++run.rep.trials;
    Formula cons = c.negated ? Formula::lnot(h) : h;
    Formula cf = Formula::counterfactual(p, cons);
    ConditionalModel upd = update(fine, c.clause, c.x);
    bool got = satisfies(upd, "w", cf, c.x);
    if (got != c.expected)
      run.fail(upd, "w", render_formula(cf),
               "updated-model cell is " + std::string(got ? "true" : "false") +
                   ", recorded value is " + (c.expected ? "true" : "false"),
               c.x);
  }
}

}  // namespace

const std::vector<std::string>& property_ids() {
  static const std::vector<std::string> ids = {
      "fact-1.1", "fact-1.2", "fact-1.3", "fact-1.4",
      "fact-2.1", "fact-2.2", "fact-2.3", "fact-2.4",
      "lemma-1",  "lemma-2",  "lemma-3",  "lemma-4",
      "lemma-5",  "lemma-6",  "dyn-static", "equiv-gamma",
      "min-oracle", "nixon-table"};
  return ids;
}

CheckReport check_property(const std::string& id, int trials,
                           const GeneratorParams& params) {
  Run run;
  run.rep.property = id;
  if (id == "fact-1.1") {
    fact_recovery(run, trials, params, Interpretation::NC);
  } else if (id == "fact-2.1") {
    fact_recovery(run, trials, params, Interpretation::MS);
  } else if (id == "fact-1.2") {
    fact_strengthen(run, trials, params, Interpretation::NC);
  } else if (id == "fact-2.2") {
    fact_strengthen(run, trials, params, Interpretation::MS);
  } else if (id == "fact-1.3") {
    fact_bridge(run, trials, params, Interpretation::NC, true);
  } else if (id == "fact-2.3") {
    fact_bridge(run, trials, params, Interpretation::MS, true);
  } else if (id == "fact-1.4") {
    fact_bridge(run, trials, params, Interpretation::NC, false);
  } else if (id == "fact-2.4") {
    fact_bridge(run, trials, params, Interpretation::MS, false);
  } else if (id == "lemma-1") {
    lemma_lowering(run, trials, params, Interpretation::NC);
  } else if (id == "lemma-2") {
    lemma_lowering(run, trials, params, Interpretation::CP);
  } else if (id == "lemma-3") {
    lemma_lowering(run, trials, params, Interpretation::MS);
  } else if (id == "lemma-4") {
    lemma_elimination(run, trials, params, CompKind::CP);
  } else if (id == "lemma-5") {
    lemma_elimination(run, trials, params, CompKind::MS);
  } else if (id == "lemma-6") {
    lemma_elimination(run, trials, params, CompKind::NC);
  } else if (id == "dyn-static") {
    dyn_static(run, trials, params);
  } else if (id == "equiv-gamma") {
    equiv_gamma(run, trials, params);
  } else if (id == "min-oracle") {
    min_oracle(run, trials, params);
  } else if (id == "nixon-table") {
    nixon_table(run);
  } else {
    throw std::invalid_argument("unknown property id '" + id + "'");
  }
  return run.finish();
}

}  // namespace cpcf
