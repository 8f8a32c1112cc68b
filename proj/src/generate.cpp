#include "cpcf/generate.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cpcf {

namespace {

std::uint64_t draw(std::mt19937_64& eng, std::uint64_t n) {
  return n == 0 ? 0 : eng() % n;
}

bool chance(std::mt19937_64& eng, double p) {
  return static_cast<double>(eng() % 1000000) < p * 1000000.0;
}

const std::vector<std::string>& prop_pool() {
  static const std::vector<std::string> pool = {"p", "q", "r", "s"};
  return pool;
}

// All ways to arrange the elements of `rest` into a sequence of nonempty
// ranks (ordered set partitions), ascending by first-block bitmask.
void ordered_partitions(const std::vector<int>& rest,
                        std::vector<std::vector<int>>& prefix,
                        std::vector<std::vector<std::vector<int>>>& out) {
  if (rest.empty()) {
    out.push_back(prefix);
    return;
  }
  unsigned full = (1u << rest.size()) - 1;
  for (unsigned mask = 1; mask <= full; ++mask) {
    std::vector<int> block, remaining;
    for (std::size_t i = 0; i < rest.size(); ++i)
      ((mask >> i) & 1u ? block : remaining).push_back(rest[i]);
    prefix.push_back(std::move(block));
    ordered_partitions(remaining, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

ConditionalModel random_model(const GeneratorParams& p) {
  if (p.min_worlds < 1 || p.max_worlds < p.min_worlds || p.num_props < 0 ||
      p.num_props > static_cast<int>(prop_pool().size()))
    throw std::invalid_argument("bad generator params");
  std::mt19937_64 eng(p.seed);
  int n = p.min_worlds +
          static_cast<int>(draw(eng, p.max_worlds - p.min_worlds + 1));

  ConditionalModel m;
  m.name = "rand-" + std::to_string(p.seed);
  m.worlds.push_back("w");
  for (int i = 1; i < n; ++i) m.worlds.push_back("v" + std::to_string(i));

  for (int j = 0; j < p.num_props; ++j) {
    WorldSet ext(n, false);
    for (int i = 0; i < n; ++i) ext[i] = draw(eng, 2) == 1;
    m.valuation[prop_pool()[j]] = ext;
  }

  for (int c = 0; c < n; ++c) {
    std::vector<int> pool;
    for (int i = 0; i < n; ++i)
      if (i != c && chance(eng, p.order_density)) pool.push_back(i);
    // Fisher-Yates with raw draws keeps the stream reproducible.
    for (std::size_t i = pool.size(); i > 1; --i)
      std::swap(pool[i - 1], pool[draw(eng, i)]);
    std::vector<std::vector<int>> ranks{{c}};
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (i > 0 && chance(eng, p.tie_prob))
        ranks.back().push_back(pool[i]);
      else
        ranks.push_back({pool[i]});
    }
    m.orders.emplace(c, SimilarityOrder::ranked(c, std::move(ranks)));
  }

  m.normalize();
  return m;
}

std::vector<ConditionalModel> enumerate_models(int worlds, int props) {
  if (worlds < 1 || worlds > 3 || props < 0 || props > 2)
    throw std::invalid_argument(
        "enumeration is guarded to at most 3 worlds and 2 propositions");

  std::vector<std::string> names = {"w", "a", "b"};
  names.resize(worlds);

  // Designated-world orders: for every subset of the other worlds, every
  // ordered partition into ranks behind the center.
  std::vector<std::vector<std::vector<int>>> orders;
  std::vector<int> others;
  for (int i = 1; i < worlds; ++i) others.push_back(i);
  unsigned full = (1u << others.size()) - 1;
  for (unsigned mask = 0; mask <= full; ++mask) {
    std::vector<int> chosen;
    for (std::size_t i = 0; i < others.size(); ++i)
      if ((mask >> i) & 1u) chosen.push_back(others[i]);
    std::vector<std::vector<int>> prefix{{0}};
    ordered_partitions(chosen, prefix, orders);
    if (mask == full) break;  // full may be 0 when worlds == 1
  }

  std::vector<ConditionalModel> out;
  int cells = worlds * props;
  std::uint64_t assignments = std::uint64_t{1} << cells;
  int index = 0;
  for (const auto& ranks : orders) {
    for (std::uint64_t bits = 0; bits < assignments; ++bits) {
      ConditionalModel m;
      m.name = "enum-" + std::to_string(worlds) + "w" + std::to_string(props) +
               "p-" + std::to_string(index++);
      m.worlds = names;
      for (int j = 0; j < props; ++j) {
        WorldSet ext(worlds, false);
        for (int i = 0; i < worlds; ++i)
          ext[i] = (bits >> (j * worlds + i)) & 1u;
        m.valuation[prop_pool()[j]] = ext;
      }
      m.orders.emplace(0, SimilarityOrder::ranked(0, ranks));
      for (int i = 1; i < worlds; ++i)
        m.orders.emplace(i, SimilarityOrder::trivial(i));
      m.normalize();
      out.push_back(std::move(m));
    }
  }
  return out;
}

Formula random_boolean_formula(std::mt19937_64& eng,
                               const std::vector<std::string>& atoms,
                               int max_depth) {
  if (max_depth <= 0 || draw(eng, 4) == 0) {
    if (atoms.empty() || draw(eng, 8) == 0) return Formula::bottom();
    return Formula::atom(atoms[draw(eng, atoms.size())]);
  }
  switch (draw(eng, 4)) {
    case 0:
      return Formula::lnot(random_boolean_formula(eng, atoms, max_depth - 1));
    case 1:
      return Formula::lor(random_boolean_formula(eng, atoms, max_depth - 1),
                          random_boolean_formula(eng, atoms, max_depth - 1));
    case 2:
      return Formula::land(random_boolean_formula(eng, atoms, max_depth - 1),
                           random_boolean_formula(eng, atoms, max_depth - 1));
    default:
      return Formula::implies(
          random_boolean_formula(eng, atoms, max_depth - 1),
          random_boolean_formula(eng, atoms, max_depth - 1));
  }
}

ClauseSet random_clause(std::mt19937_64& eng,
                        const std::vector<std::string>& atoms, int max_size) {
  std::vector<Formula> members;
  int size = static_cast<int>(draw(eng, max_size + 1));
  for (int i = 0; i < size && !atoms.empty(); ++i) {
    Formula a = Formula::atom(atoms[draw(eng, atoms.size())]);
    members.push_back(draw(eng, 2) == 0 ? a : Formula::lnot(a));
  }
  return ClauseSet(std::move(members));
}

Formula random_formula(std::mt19937_64& eng,
                       const std::vector<std::string>& atoms, int max_depth,
                       int max_clause) {
  if (max_depth <= 0 || draw(eng, 3) == 0)
    return random_boolean_formula(eng, atoms, max_depth);
  switch (draw(eng, 7)) {
    case 0:
      return Formula::lnot(
          random_formula(eng, atoms, max_depth - 1, max_clause));
    case 1:
      return Formula::lor(random_formula(eng, atoms, max_depth - 1, max_clause),
                          random_formula(eng, atoms, max_depth - 1, max_clause));
    case 2:
      return Formula::land(
          random_formula(eng, atoms, max_depth - 1, max_clause),
          random_formula(eng, atoms, max_depth - 1, max_clause));
    case 3:
      return Formula::cp_box(
          random_formula(eng, atoms, max_depth - 1, max_clause),
          random_clause(eng, atoms, max_clause),
          random_formula(eng, atoms, max_depth - 1, max_clause));
    case 4:
      return Formula::cp_diamond(
          random_formula(eng, atoms, max_depth - 1, max_clause),
          random_clause(eng, atoms, max_clause),
          random_formula(eng, atoms, max_depth - 1, max_clause));
    case 5: {
      CompKind kinds[] = {CompKind::Plain, CompKind::NC, CompKind::CP,
                          CompKind::MS};
      CompKind k = kinds[draw(eng, 4)];
      ClauseSet clause = k == CompKind::Plain
                             ? ClauseSet{}
                             : random_clause(eng, atoms, max_clause);
      return Formula::comp(
          k, std::move(clause),
          random_formula(eng, atoms, max_depth - 1, max_clause),
          random_formula(eng, atoms, max_depth - 1, max_clause));
    }
    default:
      return Formula::counterfactual(
          random_formula(eng, atoms, max_depth - 1, max_clause),
          random_formula(eng, atoms, max_depth - 1, max_clause));
  }
}

}  // namespace cpcf
