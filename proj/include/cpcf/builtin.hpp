#pragma once

#include <string>
#include <vector>

#include "cpcf/model.hpp"

namespace cpcf {

// The three worked example models: "fine" and "lewis" (the Nixon button
// scenario with the two opposite similarity judgments) and "noiter" (the
// four-world model separating nested conditionals from iterated updates).
// Throws ModelError for unknown names.
ConditionalModel builtin_model(const std::string& name);

// Source text of a builtin in the model file format.
const std::string& builtin_model_text(const std::string& name);

const std::vector<std::string>& builtin_model_names();

}  // namespace cpcf
