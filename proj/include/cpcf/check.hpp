#pragma once

#include <string>
#include <vector>

#include "cpcf/generate.hpp"
#include "cpcf/model.hpp"

namespace cpcf {

struct CheckFailure {
  std::string model_text;
  std::string world;
  std::string formula;
  std::string detail;
  std::string repro;  // ready-to-run shell command reproducing the instance
};

struct CheckReport {
  std::string property;
  int trials = 0;  // instances examined
  std::vector<CheckFailure> failures;
  double elapsed_seconds = 0.0;
  bool ok() const { return failures.empty(); }
};

// Property identifiers accepted by check_property:
//
//   fact-1.1 .. fact-1.4   counting-reading laws (empty-clause recovery,
//                          clause strengthening, diamond/box bridges to the
//                          class-restricted reading)
//   fact-2.1 .. fact-2.4   the same laws for the superset reading
//   lemma-1 lemma-2 lemma-3  conditional lowering (counting / restricted /
//                            superset) agrees with direct evaluation
//   lemma-4 lemma-5 lemma-6  tagged-comparative elimination (restricted /
//                            superset / counting) agrees with direct
//                            evaluation, and the compiled output is in the
//                            plain fragment
//   dyn-static             update-then-evaluate matches static evaluation
//                          for modality-free conditionals
//   equiv-gamma            clause agreement is an equivalence relation
//   min-oracle             minimal-world sets match an independent
//                          recursive re-implementation, all relation kinds
//   nixon-table            the 12 update-then-evaluate cells of the worked
//                          example match their recorded values
//
// `trials` scales the random part; the exhaustive small-model sweep is
// included where the property calls for it. Reports are deterministic for
// fixed (id, trials, params).
CheckReport check_property(const std::string& id, int trials,
                           const GeneratorParams& params);

const std::vector<std::string>& property_ids();

}  // namespace cpcf
