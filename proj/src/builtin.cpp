#include "cpcf/builtin.hpp"

#include <map>

#include "cpcf/model_io.hpp"

namespace cpcf {

namespace {

// Button pressed (p), signal sent (s), holocaust happens (h), button
// malfunctions (m). Two depth-2 chains; closeness disagreement between the
// two modelers is the whole difference: fine ranks the malfunction worlds
// closer, lewis the holocaust worlds.
const char* kFine = R"(model fine
worlds w u1 u2 v1 v2
val p: u1 u2 v1 v2
val s: u1 u2
val h: u1 u2
val m: v1 v2
order w: w | v1 | v2 | u1 | u2
)";

const char* kLewis = R"(model lewis
worlds w u1 u2 v1 v2
val p: u1 u2 v1 v2
val s: u1 u2
val h: u1 u2
val m: v1 v2
order w: w | u1 | u2 | v1 | v2
)";

// Nested conditional [p,{s}][q,{}]r holds at w, yet after updating with
// {s} the plain counterfactual p cf> [q,{}]r fails at w: the update also
// rewrites u's order, expelling v2 (the only q&r world) from u's horizon.
const char* kNoiter = R"(model noiter
worlds w u v1 v2
val s: w u v1
val p: u
val q: v1 v2
val r: v2
order w: w | u | v2 | v1
order u: u | v2 | v1 | w
)";

const std::map<std::string, const char*>& table() {
  static const std::map<std::string, const char*> t = {
      {"fine", kFine}, {"lewis", kLewis}, {"noiter", kNoiter}};
  return t;
}

}  // namespace

ConditionalModel builtin_model(const std::string& name) {
  return parse_model(builtin_model_text(name), ValidationMode::Strict);
}

const std::string& builtin_model_text(const std::string& name) {
  auto it = table().find(name);
  if (it == table().end())
    throw ModelError("unknown builtin model '" + name +
                     "' (available: fine, lewis, noiter)");
  static std::map<std::string, std::string> cache;
  auto [pos, inserted] = cache.emplace(name, it->second);
  return pos->second;
}

const std::vector<std::string>& builtin_model_names() {
  static const std::vector<std::string> names = {"fine", "lewis", "noiter"};
  return names;
}

}  // namespace cpcf
