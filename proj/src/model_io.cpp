#include "cpcf/model_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace cpcf {

namespace {

std::string strip(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
      return false;
  return true;
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ModelError("line " + std::to_string(line) + ": " + msg);
}

}  // namespace

ConditionalModel parse_model(const std::string& text, ValidationMode mode) {
  ConditionalModel m;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool have_worlds = false;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = strip(line);
    if (line.empty()) continue;

    if (line.rfind("model ", 0) == 0) {
      m.name = strip(line.substr(6));
      continue;
    }
    if (line.rfind("worlds", 0) == 0) {
      if (have_worlds) fail(lineno, "duplicate worlds line");
      for (const auto& w : split_ws(line.substr(6))) {
        if (!valid_name(w)) fail(lineno, "bad world name '" + w + "'");
        if (m.world_index(w) >= 0) fail(lineno, "duplicate world '" + w + "'");
        m.worlds.push_back(w);
      }
      if (m.worlds.empty()) fail(lineno, "empty worlds line");
      have_worlds = true;
      continue;
    }
    if (!have_worlds) fail(lineno, "worlds must be declared first");

    auto colon = line.find(':');
    if (line.rfind("val ", 0) == 0) {
      if (colon == std::string::npos) fail(lineno, "val line needs ':'");
      std::string prop = strip(line.substr(4, colon - 4));
      if (!valid_name(prop)) fail(lineno, "bad proposition name '" + prop + "'");
      if (m.valuation.count(prop))
        fail(lineno, "duplicate valuation for '" + prop + "'");
      WorldSet ext(m.worlds.size(), false);
      for (const auto& w : split_ws(line.substr(colon + 1))) {
        int i = m.world_index(w);
        if (i < 0) fail(lineno, "valuation names unknown world '" + w + "'");
        ext[i] = true;
      }
      m.valuation.emplace(prop, std::move(ext));
      continue;
    }
    if (line.rfind("order-pairs ", 0) == 0) {
      if (colon == std::string::npos) fail(lineno, "order-pairs line needs ':'");
      std::string center = strip(line.substr(12, colon - 12));
      int c = m.world_index(center);
      if (c < 0) fail(lineno, "unknown center world '" + center + "'");
      if (m.orders.count(c)) fail(lineno, "duplicate order for '" + center + "'");
      std::vector<std::pair<int, int>> pairs;
      std::vector<int> domain = {c};
      std::string rest = line.substr(colon + 1);
      std::istringstream ps(rest);
      std::string item;
      while (std::getline(ps, item, ',')) {
        item = strip(item);
        if (item.empty()) continue;
        auto arrow = item.find("<=");
        if (arrow == std::string::npos)
          fail(lineno, "pair '" + item + "' needs '<='");
        std::string a = strip(item.substr(0, arrow));
        std::string b = strip(item.substr(arrow + 2));
        int ia = m.world_index(a), ib = m.world_index(b);
        if (ia < 0) fail(lineno, "unknown world '" + a + "'");
        if (ib < 0) fail(lineno, "unknown world '" + b + "'");
        pairs.emplace_back(ia, ib);
        domain.push_back(ia);
        domain.push_back(ib);
      }
      m.orders.emplace(c, SimilarityOrder::from_pairs(c, std::move(domain),
                                                      std::move(pairs)));
      continue;
    }
    if (line.rfind("order ", 0) == 0) {
      if (colon == std::string::npos) fail(lineno, "order line needs ':'");
      std::string center = strip(line.substr(6, colon - 6));
      int c = m.world_index(center);
      if (c < 0) fail(lineno, "unknown center world '" + center + "'");
      if (m.orders.count(c)) fail(lineno, "duplicate order for '" + center + "'");
      std::vector<std::vector<int>> ranks;
      std::string rest = line.substr(colon + 1);
      std::istringstream rs(rest);
      std::string cls;
      while (std::getline(rs, cls, '|')) {
        std::vector<int> rank;
        for (const auto& w : split_ws(cls)) {
          int i = m.world_index(w);
          if (i < 0) fail(lineno, "unknown world '" + w + "' in order");
          rank.push_back(i);
        }
        if (rank.empty()) fail(lineno, "empty rank class");
        ranks.push_back(std::move(rank));
      }
      if (ranks.empty()) fail(lineno, "order line lists no worlds");
      m.orders.emplace(c, SimilarityOrder::ranked(c, std::move(ranks)));
      continue;
    }
    fail(lineno, "unrecognized line '" + line + "'");
  }
  if (!have_worlds) throw ModelError("model has no worlds line");
  m.normalize();
  ValidationReport rep = validate_model(m, mode);
  if (!rep.ok()) {
    std::string msg = "invalid model:";
    for (const auto& v : rep.violations) msg += "\n  " + v;
    throw ModelError(msg);
  }
  return m;
}

std::string render_model(const ConditionalModel& m) {
  std::ostringstream out;
  if (!m.name.empty()) out << "model " << m.name << "\n";
  out << "worlds";
  for (const auto& w : m.worlds) out << ' ' << w;
  out << "\n";
  for (const auto& [p, ext] : m.valuation) {
    out << "val " << p << ":";
    for (std::size_t i = 0; i < ext.size(); ++i)
      if (ext[i]) out << ' ' << m.worlds[i];
    out << "\n";
  }
  for (const auto& [c, o] : m.orders) {
    if (o.is_ranked()) {
      out << "order " << m.worlds[c] << ":";
      for (std::size_t r = 0; r < o.ranks().size(); ++r) {
        if (r) out << " |";
        for (int w : o.ranks()[r]) out << ' ' << m.worlds[w];
      }
      out << "\n";
    } else {
      out << "order-pairs " << m.worlds[c] << ":";
      bool first = true;
      std::set<int> mentioned;
      for (int u : o.domain())
        for (int v : o.domain()) {
          if (u == v || !o.leq(u, v)) continue;
          out << (first ? " " : ", ") << m.worlds[u] << "<=" << m.worlds[v];
          first = false;
          mentioned.insert(u);
          mentioned.insert(v);
        }
      for (int u : o.domain())
        if (!mentioned.count(u) && u != o.center()) {
          out << (first ? " " : ", ") << m.worlds[u] << "<=" << m.worlds[u];
          first = false;
        }
      out << "\n";
    }
  }
  return out.str();
}

ConditionalModel load_model_file(const std::string& path, ValidationMode mode) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open model file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str(), mode);
}

void save_model_file(const ConditionalModel& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ModelError("cannot write model file '" + path + "'");
  out << render_model(m);
}

}  // namespace cpcf
