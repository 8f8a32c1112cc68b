#pragma once

#include <map>
#include <string>

#include "cpcf/formula.hpp"
#include "cpcf/interpretation.hpp"
#include "cpcf/model.hpp"

namespace cpcf {

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Evaluation of formulas on a conditional model under one interpretation.
// Extensions are computed bottom-up and cached per shared subterm, so a
// single Evaluator amortizes repeated queries against the same model.
// Clause members and nested conditionals are evaluated under the same
// interpretation as the enclosing operator. Unknown propositions are false
// everywhere.
class Evaluator {
public:
  Evaluator(const ConditionalModel& m, Interpretation x);

  const WorldSet& extension(const Formula& f);
  bool satisfies(int w, const Formula& f);

  // Clause members on which u and v agree.
  ClauseSet agreement_set(const ClauseSet& clause, int u, int v);
  // Worlds of W_w that agree with w on every clause member.
  WorldSet agreement_class(const ClauseSet& clause, int w);

  // Realizes a comparison relation at spec.center:
  //   Base          the world's own similarity order on W_w
  //   CPRestricted  that order cut down to the agreement class
  //   Counting      more-agreements-first, ties broken by the base order
  //   Superset      strictly-larger-agreement-set-first, ties by base order
  Relation realize(const RelationSpec& spec);

  const ConditionalModel& model() const { return m_; }
  Interpretation interpretation() const { return x_; }

private:
  const ConditionalModel& m_;
  Interpretation x_;
  std::map<const void*, WorldSet> cache_;
};

// One-shot conveniences over a fresh Evaluator.
bool satisfies(const ConditionalModel& m, const std::string& world,
               const Formula& f, Interpretation x = Interpretation::CP);
WorldSet extension(const ConditionalModel& m, const Formula& f,
                   Interpretation x = Interpretation::CP);
ClauseSet agreement_set(const ConditionalModel& m, const ClauseSet& clause,
                        const std::string& u, const std::string& v,
                        Interpretation x = Interpretation::CP);
WorldSet agreement_class(const ConditionalModel& m, const ClauseSet& clause,
                         const std::string& w,
                         Interpretation x = Interpretation::CP);
Relation cp_relation(const ConditionalModel& m, const ClauseSet& clause,
                     const std::string& w, Interpretation x);
WorldSet min_worlds(const ConditionalModel& m, const RelationSpec& spec,
                    const WorldSet& S);

}  // namespace cpcf
