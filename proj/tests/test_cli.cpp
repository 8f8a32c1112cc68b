#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "cli.hpp"
#include "cpcf/builtin.hpp"
#include "cpcf/model_io.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "cpcf");
  std::ostringstream out, err;
  int code = cpcf::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_dir() {
  auto dir = std::filesystem::temp_directory_path() / "cpcf_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("eval reports verdict, minimal worlds, and agreement class") {
  Result r = run_cli({"eval", "--model", "fine", "--world", "w", "--sem",
                      "cp", "[p,{m}]h"});
  CHECK(r.code == 0);
  CHECK(r.out.find("true") == 0);
  CHECK(r.out.find("{u1}") != std::string::npos);
  CHECK(r.out.find("{w, u1, u2}") != std::string::npos);

  Result f = run_cli({"eval", "--model", "fine", "--world", "w", "p cf> h"});
  CHECK(f.code == 1);
  CHECK(f.out.find("false") == 0);
  CHECK(f.out.find("{v1}") != std::string::npos);

  Result l = run_cli({"eval", "--model", "lewis", "--world", "w", "p cf> h"});
  CHECK(l.code == 0);
}

TEST_CASE("machine-readable eval agrees with the text verdict") {
  for (const std::string formula :
       {"[p,{m}]h", "[p,{m,s}]h", "p cf> h", "p & ~m", "<p,{m}>h"}) {
    for (const char* sem : {"cp", "nc", "ms"}) {
      Result text = run_cli(
          {"eval", "--model", "fine", "--world", "w", "--sem", sem, formula});
      Result machine = run_cli({"eval", "--model", "fine", "--world", "w",
                                "--sem", sem, "--json", formula});
      CHECK(text.code == machine.code);
      json j = json::parse(machine.out);
      CHECK(j["command"] == "eval");
      CHECK(j["semantics"] == sem);
      CHECK(j["verdict"] == (text.code == 0));
      bool text_true = text.out.rfind("true", 0) == 0;
      CHECK(j["verdict"] == text_true);
    }
  }
}

TEST_CASE("eval traces boxes under negations and diamonds") {
  Result r = run_cli(
      {"eval", "--model", "fine", "--world", "w", "--json", "<p,{m}>h"});
  json j = json::parse(r.out);
  CHECK(j["verdict"] == true);
  CHECK(j["antecedent"] == "p");
  CHECK(j["min_worlds"] == json::array({"u1"}));
  CHECK(j["agreement_class"] == json::array({"w", "u1", "u2"}));
}

TEST_CASE("update prints an entertainable-set diff and a loadable model") {
  Result r =
      run_cli({"update", "--model", "fine", "--clause", "{m}", "--sem", "cp"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("# W_w: {w, u1, u2, v1, v2} -> {w, u1, u2}") !=
        std::string::npos);
  // The whole stdout re-parses as a model (diff lines are comments).
  cpcf::ConditionalModel m = cpcf::parse_model(r.out);
  CHECK(m.order_at(m.require_world("w")).domain().size() == 3);

  Result j = run_cli({"update", "--model", "fine", "--clause", "{m}", "--sem",
                      "cp", "--json"});
  json doc = json::parse(j.out);
  CHECK(doc["entertainable"][0]["world"] == "w");
  CHECK(doc["entertainable"][0]["changed"] == true);
  CHECK(doc["entertainable"][0]["after"] == json::array({"w", "u1", "u2"}));
  CHECK(doc["entertainable"][1]["changed"] == false);
  cpcf::ConditionalModel jm =
      cpcf::parse_model(doc["model_text"].get<std::string>());
  CHECK(cpcf::render_model(jm) == cpcf::render_model(m));
}

TEST_CASE("update writes to a file on request") {
  auto path = temp_dir() / "updated.cpm";
  Result r = run_cli({"update", "--model", "fine", "--clause", "{m, s}",
                      "--sem", "ms", "--out", path.string()});
  REQUIRE(r.code == 0);
  cpcf::ConditionalModel m =
      cpcf::load_model_file(path.string(), cpcf::ValidationMode::AllowPartial);
  CHECK(!m.order_at(m.require_world("w")).is_ranked());

  Result strict = run_cli({"validate", "--model", path.string()});
  CHECK(strict.code == 1);
  CHECK(strict.out.find("violation:") != std::string::npos);
  Result relaxed =
      run_cli({"validate", "--model", path.string(), "--allow-partial"});
  CHECK(relaxed.code == 0);
}

TEST_CASE("validate accepts the builtin models") {
  Result r = run_cli({"validate", "--model", "fine"});
  CHECK(r.code == 0);
  CHECK(r.out.find("ok") != std::string::npos);
  Result j = run_cli({"validate", "--model", "noiter", "--json"});
  json doc = json::parse(j.out);
  CHECK(doc["ok"] == true);
  CHECK(doc["violations"].empty());
}

TEST_CASE("translate emits the compiled formula with statistics") {
  Result r = run_cli({"translate", "--sem", "cp", "[p,{m}]h"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("=<") != std::string::npos);
  CHECK(r.out.find("# nodes:") != std::string::npos);
  CHECK(r.out.find("sign patterns: 2") != std::string::npos);

  Result j = run_cli({"translate", "--sem", "cp", "--json", "[p,{m}]h"});
  json doc = json::parse(j.out);
  CHECK(doc["plain_fragment"] == true);
  CHECK(doc["sign_patterns"] == 2);
  std::string text = r.out.substr(0, r.out.find('\n'));
  CHECK(doc["output"].get<std::string>() == text);
}

TEST_CASE("translate enforces its budget with a distinct exit code") {
  Result r = run_cli({"translate", "--sem", "ms", "[p,{a,b,c,d}]h"});
  CHECK(r.code == 3);
  CHECK(r.err.find("budget") != std::string::npos);
  Result ok = run_cli(
      {"translate", "--sem", "cp", "--max-clause", "4", "[p,{a,b,c,d}]h"});
  CHECK(ok.code == 0);
  Result tiny = run_cli(
      {"translate", "--sem", "cp", "--max-nodes", "5", "[p,{m}]h"});
  CHECK(tiny.code == 3);
}

TEST_CASE("check runs properties and lists their names") {
  Result list = run_cli({"check", "--list"});
  CHECK(list.code == 0);
  CHECK(list.out.find("fact-1.1") != std::string::npos);
  CHECK(list.out.find("nixon-table") != std::string::npos);

  Result r = run_cli({"check", "nixon-table"});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS nixon-table: 12 instances, 0 failure(s)") == 0);

  Result j = run_cli({"check", "min-oracle", "--trials", "10", "--json"});
  json doc = json::parse(j.out);
  CHECK(doc["ok"] == true);
  CHECK(doc["failures"].empty());

  Result bad = run_cli({"check", "nosuch"});
  CHECK(bad.code == 2);
  Result none = run_cli({"check"});
  CHECK(none.code == 2);
}

TEST_CASE("the table subcommand prints all twelve grid cells") {
  Result r = run_cli({"table"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("cp") != std::string::npos);

  Result j = run_cli({"table", "--json"});
  json doc = json::parse(j.out);
  REQUIRE(doc["cells"].size() == 12);
  auto cell = [&](const std::string& cond, const std::string& clause,
                  const std::string& sem) {
    for (const json& c : doc["cells"]) {
      if (c["conditional"] == cond && c["clause"] == clause &&
          c["semantics"] == sem)
        return c["verdict"].get<bool>();
    }
    FAIL("cell not found");
    return false;
  };
  CHECK(cell("[p, {}] h", "{m}", "cp"));
  CHECK(cell("[p, {}] h", "{m}", "nc"));
  CHECK(cell("[p, {}] h", "{m}", "ms"));
  CHECK(cell("[p, {}] h", "{m, s}", "cp"));
  CHECK(!cell("[p, {}] h", "{m, s}", "nc"));
  CHECK(!cell("[p, {}] h", "{m, s}", "ms"));
  CHECK(!cell("[p, {}] ~h", "{m}", "cp"));
  CHECK(!cell("[p, {}] ~h", "{m}", "nc"));
  CHECK(!cell("[p, {}] ~h", "{m}", "ms"));
  CHECK(cell("[p, {}] ~h", "{m, s}", "cp"));
  CHECK(cell("[p, {}] ~h", "{m, s}", "nc"));
  CHECK(!cell("[p, {}] ~h", "{m, s}", "ms"));
}

TEST_CASE("export writes builtins that match the library's models") {
  auto dir = temp_dir() / "exported";
  std::filesystem::create_directories(dir);
  Result r = run_cli({"export-builtin", "--dir", dir.string()});
  REQUIRE(r.code == 0);
  for (const std::string& name : cpcf::builtin_model_names()) {
    auto path = dir / (name + ".cpm");
    REQUIRE(std::filesystem::exists(path));
    cpcf::ConditionalModel m = cpcf::load_model_file(path.string());
    CHECK(cpcf::render_model(m) ==
          cpcf::render_model(cpcf::builtin_model(name)));
  }
  Result one = run_cli({"export-builtin", "noiter", "--dir", dir.string()});
  CHECK(one.code == 0);
  Result bad = run_cli({"export-builtin", "nosuch", "--dir", dir.string()});
  CHECK(bad.code == 2);
}

TEST_CASE("a model file on disk loads by path") {
  auto path = temp_dir() / "tiny.cpm";
  {
    std::ofstream f(path);
    f << "worlds w a\nval p: a\norder w: w | a\n";
  }
  Result r = run_cli({"eval", "--model", path.string(), "--world", "w",
                      "~_|_ cf> p"});
  CHECK(r.code == 1);  // the actual world is closest and falsifies p
  Result r2 = run_cli({"eval", "--model", path.string(), "--world", "w",
                       "p mcf> p"});
  CHECK(r2.code == 0);
}

TEST_CASE("input errors use exit code two") {
  CHECK(run_cli({"eval", "--model", "nosuch.cpm", "--world", "w", "p"}).code ==
        2);
  CHECK(run_cli({"eval", "--model", "fine", "--world", "zz", "p"}).code == 2);
  CHECK(run_cli({"eval", "--model", "fine", "--world", "w", "p &"}).code == 2);
  CHECK(run_cli({"eval", "--world", "w", "p"}).code == 2);  // missing model
  CHECK(run_cli({"update", "--model", "fine", "--clause", "{p,}"}).code == 2);
  CHECK(run_cli({"nosuchcommand"}).code == 2);
  CHECK(run_cli({}).code == 2);
}

TEST_CASE("help exits cleanly") {
  Result r = run_cli({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("eval") != std::string::npos);
  Result sub = run_cli({"eval", "--help"});
  CHECK(sub.code == 0);
}

TEST_CASE("the seed environment variable feeds the checker") {
  setenv("CP_SEED", "99", 1);
  Result r = run_cli({"check", "min-oracle", "--trials", "5", "--json"});
  unsetenv("CP_SEED");
  REQUIRE(r.code == 0);

  setenv("CP_SEED", "notanumber", 1);
  Result bad = run_cli({"check", "min-oracle", "--trials", "5"});
  unsetenv("CP_SEED");
  CHECK(bad.code == 2);
}
