#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "cpcf/formula.hpp"

namespace cpcf {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " (at offset " + std::to_string(pos) + ")"),
        position(pos) {}
  std::size_t position;
};

// Concrete syntax:
//
//   expr  := impl (("=<" [clause tag] | "cf>" | "mcf>") expr)?
//   impl  := disj ("->" impl)?
//   disj  := conj ("|" conj)*
//   conj  := neg ("&" neg)*
//   neg   := "~" neg | prim
//   prim  := name | "_|_" | "(" expr ")"
//          | "[" expr "," clause "]" expr
//          | "<" expr "," clause ">" expr
//   clause:= "{" (expr ("," expr)*)? "}"
//   tag   := "nc" | "cp" | "ms"
//
// "~" binds tightest, then "&", "|", "->"; comparatives, "cf>"/"mcf>" and
// the consequents of bracket/angle conditionals bind loosest and associate
// to the right. Names are nonempty runs of ASCII alphanumerics and
// underscore.
Formula parse_formula(const std::string& text);

// Parses a bare clause set such as "{m, s}" (used by the command line).
ClauseSet parse_clause_set(const std::string& text);

}  // namespace cpcf
