#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cpcf/formula.hpp"
#include "cpcf/interpretation.hpp"

namespace cpcf {

// Subset of a model's worlds, indexed by world position.
using WorldSet = std::vector<bool>;

bool ws_subset(const WorldSet& a, const WorldSet& b);
WorldSet ws_intersect(const WorldSet& a, const WorldSet& b);
int ws_count(const WorldSet& a);

// Similarity order of one world: a reflexive transitive relation on an
// entertainable domain containing the center, with the center strictly
// below everything else. Total orders are stored as ranked classes
// (ranks[0] = {center}); relations that fail totality (they arise from
// superset-style updates) are stored as an explicit pair list over their
// domain.
class SimilarityOrder {
public:
  static SimilarityOrder ranked(int center, std::vector<std::vector<int>> ranks);
  static SimilarityOrder from_pairs(int center, std::vector<int> domain,
                                    std::vector<std::pair<int, int>> leq_pairs);
  static SimilarityOrder trivial(int center);

  int center() const { return center_; }
  bool is_ranked() const { return ranked_; }
  const std::vector<std::vector<int>>& ranks() const { return ranks_; }
  const std::vector<int>& domain() const { return domain_; }  // sorted
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }

  bool contains(int w) const;
  bool leq(int u, int v) const;
  // Rank index of a domain world (ranked orders only).
  int rank_of(int w) const;

private:
  int center_ = -1;
  bool ranked_ = true;
  std::vector<std::vector<int>> ranks_;
  std::vector<int> domain_;
  std::vector<std::pair<int, int>> pairs_;  // non-reflexive pairs, u <= v
  std::vector<char> leq_;                   // dense matrix over domain slots
  std::map<int, int> slot_;
  void build_matrix();
};

struct ConditionalModel {
  std::string name;
  std::vector<std::string> worlds;
  std::map<std::string, WorldSet> valuation;   // proposition -> worlds
  std::map<int, SimilarityOrder> orders;       // explicit orders only
  std::set<int> defaulted;                     // worlds given trivial orders

  int world_index(const std::string& w) const;  // -1 when absent
  int require_world(const std::string& w) const;
  const SimilarityOrder& order_at(int w) const;
  WorldSet prop_extension(const std::string& p) const;  // absent -> empty
  WorldSet empty_set() const { return WorldSet(worlds.size(), false); }
  std::string world_set_names(const WorldSet& s) const;

  // Fills `defaulted` and materializes trivial orders for worlds that have
  // none. Called by the parser/builders after assembling the pieces.
  void normalize();

private:
  std::map<int, SimilarityOrder> trivials_;
};

// Which ordering a minimality query runs over.
enum class RelKind { Base, CPRestricted, Counting, Superset };

// Description of a world-indexed comparison relation. `clause` is ignored
// for Base; `interp` fixes how clause members are evaluated when they are
// themselves modal.
struct RelationSpec {
  RelKind kind = RelKind::Base;
  ClauseSet clause;
  int center = -1;
  Interpretation interp = Interpretation::CP;
};

// A realized relation: explicit domain plus a <= matrix over it.
struct Relation {
  int center = -1;
  std::vector<int> domain;   // sorted world indices
  bool total = true;
  bool in_domain(int u) const;
  bool leq(int u, int v) const;
  bool strictly_below(int u, int v) const;

  static Relation from_matrix(int center, std::vector<int> domain,
                              std::vector<char> leq);
  const std::vector<char>& matrix() const { return leq_; }

private:
  std::vector<char> leq_;  // domain.size()^2, row-major by domain slot
  std::map<int, int> slot_;
};

Relation base_relation(const ConditionalModel& m, int center);

// Minimal elements of S within the relation's domain: v is minimal when no
// u in S-and-domain lies strictly below it.
WorldSet min_worlds(const Relation& rel, const WorldSet& S);

enum class ValidationMode { Strict, AllowPartial };

struct ValidationReport {
  std::vector<std::string> violations;
  std::vector<std::string> notes;
  bool ok() const { return violations.empty(); }
};

// Checks the order conditions (reflexive, transitive, centered, total in
// Strict mode) and the valuation against the world list. Worlds whose order
// was defaulted are reported in the notes.
ValidationReport validate_model(const ConditionalModel& m,
                                ValidationMode mode = ValidationMode::Strict);

struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cpcf
