#pragma once

#include <string>

#include "cpcf/formula.hpp"
#include "cpcf/interpretation.hpp"
#include "cpcf/model.hpp"

namespace cpcf {

// A model transformation: re-derive every world's similarity order from the
// clause under one interpretation.
struct UpdateDescriptor {
  ClauseSet clause;
  Interpretation interpretation = Interpretation::CP;
};

// Returns a fresh model with the same worlds and valuation in which every
// world's order is replaced by the clause-indexed comparison relation at
// that world. Class-restricted updates may shrink entertainable sets;
// superset updates may produce partial orders, which are stored as explicit
// pair sets. Worlds whose re-derived relation coincides with their current
// order keep it unchanged, so updating with the empty clause is the
// identity.
//
// Updates may be iterated, but iteration is NOT equivalent to nesting the
// corresponding modalities: with a modal consequent, [phi,G][psi,D]chi can
// hold statically while phi cf> [psi,D]chi fails in the updated model. Use
// check_dynamic_static_agreement for the modality-free case where the two
// views provably coincide.
ConditionalModel update(const ConditionalModel& m, const UpdateDescriptor& d);
ConditionalModel update(const ConditionalModel& m, const ClauseSet& clause,
                        Interpretation x);

// True when the static truth of [ant, clause] cons at w equals the truth of
// the plain counterfactual ant cf> cons at w in the updated model. Requires
// ant and cons to be modality-free (throws std::invalid_argument otherwise);
// under that precondition the result is always true.
bool check_dynamic_static_agreement(const ConditionalModel& m,
                                    const std::string& w, const Formula& ant,
                                    const ClauseSet& clause,
                                    const Formula& cons, Interpretation x);

}  // namespace cpcf
