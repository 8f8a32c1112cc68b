#include "cli.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cpcf/builtin.hpp"
#include "cpcf/check.hpp"
#include "cpcf/dynamics.hpp"
#include "cpcf/formula.hpp"
#include "cpcf/interpretation.hpp"
#include "cpcf/model_io.hpp"
#include "cpcf/parse.hpp"
#include "cpcf/semantics.hpp"
#include "cpcf/translate.hpp"

namespace cpcf::cli {
namespace {

using nlohmann::json;

constexpr int kTrue = 0;
constexpr int kFalse = 1;
constexpr int kInputError = 2;
constexpr int kBudgetExceeded = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_builtin(const std::string& name) {
  const auto& names = builtin_model_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

// Builtin names win over paths; "-" reads the model from standard input.
ConditionalModel load_model(const std::string& arg) {
  if (is_builtin(arg)) return builtin_model(arg);
  if (arg == "-") return parse_model(slurp(std::cin));
  std::ifstream f(arg);
  if (!f) throw InputError("cannot open model file '" + arg + "'");
  return parse_model(slurp(f));
}

std::string render_clause_set(const ClauseSet& c) {
  std::string out = "{";
  bool first = true;
  for (const Formula& g : c.members()) {
    if (!first) out += ", ";
    first = false;
    out += render_formula(g);
  }
  return out + "}";
}

json world_names_json(const ConditionalModel& m, const WorldSet& s) {
  json a = json::array();
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i]) a.push_back(m.worlds[i]);
  return a;
}

json world_list_json(const ConditionalModel& m, const std::vector<int>& ws) {
  json a = json::array();
  for (int i : ws) a.push_back(m.worlds[static_cast<std::size_t>(i)]);
  return a;
}

std::string world_list_names(const ConditionalModel& m,
                             const std::vector<int>& ws) {
  std::string out = "{";
  bool first = true;
  for (int i : ws) {
    if (!first) out += ", ";
    first = false;
    out += m.worlds[static_cast<std::size_t>(i)];
  }
  return out + "}";
}

// Strips negations off the front of `f`; returns the conditional underneath,
// if any. Covers boxes and the diamond/might abbreviations, whose evaluation
// trace (minimal worlds, agreement class) is worth showing.
const Formula* conditional_core(const Formula& f) {
  const Formula* g = &f;
  while (g->kind() == Connective::Not) g = &g->child(0);
  return g->kind() == Connective::CPBox ? g : nullptr;
}

// Sum over clause-indexed operators of the number of sign assignments their
// translation enumerates.
std::size_t sign_pattern_count(const Formula& f) {
  std::size_t total = 0;
  bool clause_indexed =
      f.kind() == Connective::CPBox ||
      (f.kind() == Connective::CompPoss && f.comp_kind() != CompKind::Plain);
  if (clause_indexed) {
    total += std::size_t{1} << std::min<std::size_t>(f.clause().size(), 62);
    for (const Formula& g : f.clause().members()) total += sign_pattern_count(g);
  }
  for (std::size_t i = 0; i < f.arity(); ++i)
    total += sign_pattern_count(f.child(i));
  return total;
}

// ---------------------------------------------------------------------------
// Subcommand payloads

struct EvalArgs {
  std::string model, world, sem = "cp", formula;
  bool json = false;
};

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  ConditionalModel m = load_model(a.model);
  int w = m.world_index(a.world);
  if (w < 0) throw InputError("unknown world '" + a.world + "'");
  Interpretation x = interpretation_from_name(a.sem);
  Formula f = parse_formula(a.formula);

  Evaluator ev(m, x);
  bool verdict = ev.satisfies(w, f);

  bool traced = false;
  WorldSet min_set, cls;
  ClauseSet clause;
  Formula ant = Formula::bottom();
  if (const Formula* box = conditional_core(f)) {
    clause = box->clause();
    ant = box->child(0);
    Relation rel = cp_relation(m, clause, a.world, x);
    min_set = min_worlds(rel, ev.extension(ant));
    cls = ev.agreement_class(clause, w);
    traced = true;
  }

  if (a.json) {
    json j{{"command", "eval"},       {"model", a.model},
           {"world", a.world},        {"semantics", a.sem},
           {"formula", render_formula(f)}, {"verdict", verdict}};
    if (traced) {
      j["antecedent"] = render_formula(ant);
      j["clause"] = render_clause_set(clause);
      j["min_worlds"] = world_names_json(m, min_set);
      j["agreement_class"] = world_names_json(m, cls);
    }
    out << j.dump(2) << "\n";
  } else {
    out << (verdict ? "true" : "false") << "\n";
    if (traced) {
      out << "min " << render_formula(ant)
          << "-worlds: " << m.world_set_names(min_set) << "\n";
      out << "agreement class " << render_clause_set(clause) << ": "
          << m.world_set_names(cls) << "\n";
    }
  }
  return verdict ? kTrue : kFalse;
}

struct UpdateArgs {
  std::string model, clause, sem = "cp", out_path;
  bool json = false;
};

int cmd_update(const UpdateArgs& a, std::ostream& out) {
  ConditionalModel m = load_model(a.model);
  ClauseSet clause = parse_clause_set(a.clause);
  Interpretation x = interpretation_from_name(a.sem);
  ConditionalModel m2 = update(m, clause, x);
  std::string text = render_model(m2);

  struct Row {
    std::string world;
    std::vector<int> before, after;
    bool changed;
  };
  std::vector<Row> rows;
  for (std::size_t i = 0; i < m.worlds.size(); ++i) {
    int wi = static_cast<int>(i);
    Row r{m.worlds[i], m.order_at(wi).domain(), m2.order_at(wi).domain(),
          false};
    r.changed = r.before != r.after;
    rows.push_back(std::move(r));
  }

  if (!a.out_path.empty()) {
    std::ofstream f(a.out_path);
    if (!f) throw InputError("cannot write '" + a.out_path + "'");
    f << text;
  }

  if (a.json) {
    json diffs = json::array();
    for (const Row& r : rows)
      diffs.push_back(json{{"world", r.world},
                           {"before", world_list_json(m, r.before)},
                           {"after", world_list_json(m2, r.after)},
                           {"changed", r.changed}});
    json j{{"command", "update"},
           {"model", a.model},
           {"clause", render_clause_set(clause)},
           {"semantics", a.sem},
           {"entertainable", diffs},
           {"model_text", text}};
    if (!a.out_path.empty()) j["written"] = a.out_path;
    out << j.dump(2) << "\n";
    return kTrue;
  }

  // The diff lines start with '#', so piping stdout back into --model -
  // still parses.
  for (const Row& r : rows) {
    out << "# W_" << r.world << ": " << world_list_names(m, r.before);
    if (r.changed)
      out << " -> " << world_list_names(m2, r.after) << "\n";
    else
      out << " (unchanged)\n";
  }
  if (a.out_path.empty())
    out << text;
  else
    out << "# written to " << a.out_path << "\n";
  return kTrue;
}

struct TranslateArgs {
  std::string formula, sem = "cp";
  std::size_t max_clause = TranslationBudget{}.max_clause_size;
  std::size_t max_nodes = TranslationBudget{}.max_nodes;
  bool json = false;
};

int cmd_translate(const TranslateArgs& a, std::ostream& out) {
  Formula f = parse_formula(a.formula);
  Interpretation x = interpretation_from_name(a.sem);
  TranslationBudget budget{a.max_clause, a.max_nodes};
  Formula lowered = translate_full(f, x, budget);
  std::size_t nodes = tree_size(lowered);
  std::size_t patterns = sign_pattern_count(f);

  if (a.json) {
    json j{{"command", "translate"},
           {"semantics", a.sem},
           {"input", render_formula(f)},
           {"output", render_formula(lowered)},
           {"plain_fragment", is_lminus(lowered)},
           {"nodes", nodes},
           {"sign_patterns", patterns}};
    out << j.dump(2) << "\n";
  } else {
    out << render_formula(lowered) << "\n";
    out << "# nodes: " << nodes << ", sign patterns: " << patterns << "\n";
  }
  return kTrue;
}

struct CheckArgs {
  std::string property;
  int trials = 1000;
  std::uint64_t seed = 1;
  int min_worlds = 2, max_worlds = 6, props = 3;
  bool json = false;
  bool list = false;
};

int cmd_check(const CheckArgs& a, std::ostream& out) {
  if (a.list) {
    if (a.json) {
      out << json(property_ids()).dump(2) << "\n";
    } else {
      for (const std::string& id : property_ids()) out << id << "\n";
    }
    return kTrue;
  }
  GeneratorParams params;
  params.min_worlds = a.min_worlds;
  params.max_worlds = a.max_worlds;
  params.num_props = a.props;
  params.seed = a.seed;
  CheckReport rep = check_property(a.property, a.trials, params);

  if (a.json) {
    json fails = json::array();
    for (const CheckFailure& f : rep.failures)
      fails.push_back(json{{"world", f.world},
                           {"formula", f.formula},
                           {"detail", f.detail},
                           {"repro", f.repro},
                           {"model", f.model_text}});
    json j{{"command", "check"},
           {"property", rep.property},
           {"trials", rep.trials},
           {"failures", fails},
           {"elapsed_seconds", rep.elapsed_seconds},
           {"ok", rep.ok()}};
    out << j.dump(2) << "\n";
  } else {
    out << (rep.ok() ? "PASS" : "FAIL") << " " << rep.property << ": "
        << rep.trials << " instances, " << rep.failures.size()
        << " failure(s), " << std::fixed << std::setprecision(2)
        << rep.elapsed_seconds << "s\n";
    for (const CheckFailure& f : rep.failures) {
      out << "  world " << f.world << ": " << f.formula << "\n";
      out << "    " << f.detail << "\n";
      out << "    repro:\n";
      std::istringstream lines(f.repro);
      for (std::string line; std::getline(lines, line);)
        out << "      " << line << "\n";
    }
  }
  return rep.ok() ? kTrue : kFalse;
}

int cmd_table(bool json_mode, std::ostream& out) {
  ConditionalModel fine = builtin_model("fine");
  const std::array<Formula, 2> conds = {parse_formula("p cf> h"),
                                        parse_formula("p cf> ~h")};
  const std::array<ClauseSet, 2> clauses = {parse_clause_set("{m}"),
                                            parse_clause_set("{m, s}")};
  const std::array<Interpretation, 3> sems = {
      Interpretation::CP, Interpretation::NC, Interpretation::MS};

  json cells = json::array();
  std::ostringstream grid;
  grid << std::left << std::setw(14) << "conditional" << std::setw(10)
       << "clause";
  for (Interpretation x : sems)
    grid << std::setw(7) << interpretation_name(x);
  grid << "\n";
  for (const Formula& cond : conds) {
    for (const ClauseSet& clause : clauses) {
      grid << std::setw(14) << render_formula(cond) << std::setw(10)
           << render_clause_set(clause);
      for (Interpretation x : sems) {
        ConditionalModel updated = update(fine, clause, x);
        bool v = satisfies(updated, "w", cond, x);
        grid << std::setw(7) << (v ? "true" : "false");
        cells.push_back(json{{"conditional", render_formula(cond)},
                             {"clause", render_clause_set(clause)},
                             {"semantics", interpretation_name(x)},
                             {"verdict", v}});
      }
      grid << "\n";
    }
  }

  if (json_mode) {
    out << json{{"command", "table"}, {"model", "fine"}, {"world", "w"},
                {"cells", cells}}
               .dump(2)
        << "\n";
  } else {
    out << "update-then-evaluate on fine at w\n" << grid.str();
  }
  return kTrue;
}

struct ValidateArgs {
  std::string model;
  bool allow_partial = false;
  bool json = false;
};

int cmd_validate(const ValidateArgs& a, std::ostream& out) {
  ConditionalModel m = load_model(a.model);
  ValidationMode mode =
      a.allow_partial ? ValidationMode::AllowPartial : ValidationMode::Strict;
  ValidationReport rep = validate_model(m, mode);

  if (a.json) {
    json j{{"command", "validate"},
           {"model", a.model},
           {"mode", a.allow_partial ? "allow-partial" : "strict"},
           {"violations", rep.violations},
           {"notes", rep.notes},
           {"ok", rep.ok()}};
    out << j.dump(2) << "\n";
  } else {
    for (const std::string& v : rep.violations) out << "violation: " << v << "\n";
    for (const std::string& n : rep.notes) out << "note: " << n << "\n";
    out << (rep.ok() ? "ok" : "invalid") << "\n";
  }
  return rep.ok() ? kTrue : kFalse;
}

struct ExportArgs {
  std::string name;  // empty = all
  std::string dir = ".";
  bool json = false;
};

int cmd_export(const ExportArgs& a, std::ostream& out) {
  std::vector<std::string> names;
  if (a.name.empty()) {
    names = builtin_model_names();
  } else if (is_builtin(a.name)) {
    names.push_back(a.name);
  } else {
    throw InputError("unknown builtin model '" + a.name + "'");
  }
  json written = json::array();
  for (const std::string& n : names) {
    std::string path = a.dir + "/" + n + ".cpm";
    std::ofstream f(path);
    if (!f) throw InputError("cannot write '" + path + "'");
    f << builtin_model_text(n);
    written.push_back(path);
    if (!a.json) out << path << "\n";
  }
  if (a.json)
    out << json{{"command", "export-builtin"}, {"written", written}}.dump(2)
        << "\n";
  return kTrue;
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{
      "cpcf — model checker for ceteris paribus counterfactuals.\n"
      "Models are finite world sets with per-world similarity orders; "
      "conditionals\ncarry a clause of formulas to keep equal, under the "
      "strict (cp), counting\n(nc), or superset (ms) reading."};
  app.require_subcommand(1);

  std::uint64_t default_seed = 1;
  if (const char* env = std::getenv("CP_SEED")) {
    try {
      default_seed = std::stoull(env);
    } catch (const std::exception&) {
      err << "error: CP_SEED is not a number: " << env << "\n";
      return kInputError;
    }
  }

  EvalArgs ev;
  CLI::App* eval = app.add_subcommand(
      "eval", "Evaluate a formula at a world of a model");
  eval->add_option("--model", ev.model,
                   "builtin name (fine, lewis, noiter), file path, or - for stdin")
      ->required();
  eval->add_option("--world", ev.world, "world of evaluation")->required();
  eval->add_option("--sem", ev.sem, "interpretation: cp, nc, or ms")
      ->check(CLI::IsMember({"cp", "nc", "ms"}))
      ->capture_default_str();
  eval->add_flag("--json", ev.json, "machine-readable output");
  eval->add_option("formula", ev.formula, "formula to evaluate")->required();

  UpdateArgs up;
  CLI::App* upd = app.add_subcommand(
      "update", "Update a model by a ceteris paribus clause");
  upd->add_option("--model", up.model, "builtin name, file path, or -")
      ->required();
  upd->add_option("--clause", up.clause, "clause set, e.g. \"{m, s}\"")
      ->required();
  upd->add_option("--sem", up.sem, "interpretation: cp, nc, or ms")
      ->check(CLI::IsMember({"cp", "nc", "ms"}))
      ->capture_default_str();
  upd->add_option("--out", up.out_path, "write the updated model here");
  upd->add_flag("--json", up.json, "machine-readable output");

  TranslateArgs tr;
  CLI::App* tra = app.add_subcommand(
      "translate", "Compile clause-indexed operators into the plain "
                   "comparative fragment");
  tra->add_option("--sem", tr.sem, "interpretation: cp, nc, or ms")
      ->check(CLI::IsMember({"cp", "nc", "ms"}))
      ->capture_default_str();
  tra->add_option("--max-clause", tr.max_clause,
                  "largest clause the expansion accepts")
      ->capture_default_str();
  tra->add_option("--max-nodes", tr.max_nodes,
                  "node budget for the compiled formula")
      ->capture_default_str();
  tra->add_flag("--json", tr.json, "machine-readable output");
  tra->add_option("formula", tr.formula, "formula to compile")->required();

  CheckArgs ck;
  ck.seed = default_seed;
  std::string prop_help = "property id, one of:";
  for (const std::string& id : property_ids()) prop_help += " " + id;
  CLI::App* chk = app.add_subcommand(
      "check", "Run a property over random and enumerated models");
  chk->add_option("property", ck.property, prop_help);
  chk->add_flag("--list", ck.list, "list property ids and exit");
  chk->add_option("--trials", ck.trials, "random models to draw")
      ->capture_default_str();
  chk->add_option("--seed", ck.seed,
                  "random seed (default from CP_SEED, else 1)");
  chk->add_option("--min-worlds", ck.min_worlds, "smallest random model")
      ->capture_default_str();
  chk->add_option("--max-worlds", ck.max_worlds, "largest random model")
      ->capture_default_str();
  chk->add_option("--props", ck.props, "propositions per random model")
      ->capture_default_str();
  chk->add_flag("--json", ck.json, "machine-readable output");

  bool table_json = false;
  CLI::App* tab = app.add_subcommand(
      "table", "Update-then-evaluate grid of the Nixon conditionals");
  tab->add_flag("--json", table_json, "machine-readable output");

  ValidateArgs va;
  CLI::App* val = app.add_subcommand(
      "validate", "Check a model file against the order conditions");
  val->add_option("--model", va.model, "builtin name, file path, or -")
      ->required();
  val->add_flag("--allow-partial", va.allow_partial,
                "accept partial (pair-list) orders");
  val->add_flag("--json", va.json, "machine-readable output");

  ExportArgs ex;
  CLI::App* exp = app.add_subcommand(
      "export-builtin", "Write builtin models out as .cpm files");
  exp->add_option("name", ex.name, "builtin to export (default: all)");
  exp->add_option("--dir", ex.dir, "target directory")->capture_default_str();
  exp->add_flag("--json", ex.json, "machine-readable output");

  std::vector<const char*> ptrs;
  ptrs.reserve(argv.size());
  for (const std::string& s : argv) ptrs.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(ptrs.size()), ptrs.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kTrue : kInputError;
  }

  try {
    if (*eval) return cmd_eval(ev, out);
    if (*upd) return cmd_update(up, out);
    if (*tra) return cmd_translate(tr, out);
    if (*chk) {
      if (!ck.list && ck.property.empty())
        throw InputError("check needs a property id (or --list)");
      return cmd_check(ck, out);
    }
    if (*tab) return cmd_table(table_json, out);
    if (*val) return cmd_validate(va, out);
    if (*exp) return cmd_export(ex, out);
  } catch (const BudgetError& e) {
    err << "error: translation budget exceeded: " << e.what()
        << " (estimate " << e.estimate << ")\n";
    return kBudgetExceeded;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ModelError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const EvalError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  err << "error: no subcommand\n";
  return kInputError;
}

}  // namespace cpcf::cli
