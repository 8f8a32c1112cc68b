#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cpcf/formula.hpp"
#include "cpcf/model.hpp"

namespace cpcf {

// Knobs for the random model source. Identical params (seed included)
// produce identical models on every platform: all draws go through the raw
// engine, never through distribution objects.
struct GeneratorParams {
  int min_worlds = 2;
  int max_worlds = 6;
  int num_props = 3;
  double order_density = 0.75;  // chance a non-center world is entertainable
  double tie_prob = 0.25;       // chance a world shares the previous rank
  std::uint64_t seed = 1;
};

// One random model, fully determined by the params. Every world gets an
// explicit ranked order with itself strictly first.
ConditionalModel random_model(const GeneratorParams& p);

// Every model with `worlds` worlds and `props` propositions, designated
// first world "w": each valuation crossed with each ranked total
// strictly-centered order at w over each entertainable subset; the other
// worlds get trivial orders. Guarded to worlds <= 3, props <= 2 (throws
// std::invalid_argument beyond).
std::vector<ConditionalModel> enumerate_models(int worlds, int props);

// Random formulas over the given atom names, drawn from the engine. Depth
// counts connectives along the deepest path.
Formula random_boolean_formula(std::mt19937_64& eng,
                               const std::vector<std::string>& atoms,
                               int max_depth);
// Like the above but may also introduce conditionals and comparatives
// (clauses stay Boolean, at most max_clause members).
Formula random_formula(std::mt19937_64& eng,
                       const std::vector<std::string>& atoms, int max_depth,
                       int max_clause);
// A clause of distinct Boolean members (literals over the atoms).
ClauseSet random_clause(std::mt19937_64& eng,
                        const std::vector<std::string>& atoms, int max_size);

}  // namespace cpcf
