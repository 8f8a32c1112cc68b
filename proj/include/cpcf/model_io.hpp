#pragma once

#include <string>

#include "cpcf/model.hpp"

namespace cpcf {

// Line-oriented model format:
//
//   model fine                    # optional name
//   worlds w u1 u2 v1 v2
//   val p: u1 u2 v1 v2            # omitted propositions are false
//   order w: w | v1 | v2 | u1 u2  # ranked classes, closest first
//   order-pairs w: w<=u, u<=v     # explicit <= pairs (reflexivity implied)
//
// '#' starts a comment. Worlds without an order line get the trivial order
// on themselves; the validator notes them as defaulted. Ranked orders are
// total by construction; order-pairs stanzas may be partial, which Strict
// validation rejects and AllowPartial accepts.
ConditionalModel parse_model(const std::string& text,
                             ValidationMode mode = ValidationMode::AllowPartial);

std::string render_model(const ConditionalModel& m);

ConditionalModel load_model_file(const std::string& path,
                                 ValidationMode mode = ValidationMode::AllowPartial);
void save_model_file(const ConditionalModel& m, const std::string& path);

}  // namespace cpcf
