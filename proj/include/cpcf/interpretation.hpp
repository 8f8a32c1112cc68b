#pragma once

#include <stdexcept>
#include <string>

namespace cpcf {

// How a clause-indexed conditional reorders worlds: by restriction to the
// agreement class (CP), by agreement-set cardinality (NC), or by
// agreement-set inclusion (MS).
enum class Interpretation { CP, NC, MS };

inline const char* interpretation_name(Interpretation x) {
  switch (x) {
    case Interpretation::CP: return "cp";
    case Interpretation::NC: return "nc";
    case Interpretation::MS: return "ms";
  }
  return "?";
}

inline Interpretation interpretation_from_name(const std::string& s) {
  if (s == "cp") return Interpretation::CP;
  if (s == "nc") return Interpretation::NC;
  if (s == "ms") return Interpretation::MS;
  throw std::invalid_argument("unknown interpretation '" + s + "'");
}

}  // namespace cpcf
