#pragma once

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wlrni/logic.hpp"

namespace wlrni {

struct DimacsParseError : std::runtime_error {
  int line;
  DimacsParseError(int line_, const std::string& what_)
      : std::runtime_error("dimacs parse error at line " + std::to_string(line_) +
                           ": " + what_),
        line(line_) {}
};

// Parses DIMACS CNF ("p cnf V C", clauses of 1-based signed ids terminated by
// 0, 'c' comment lines). External ids map to 0-based var indices. Tautological
// clauses are accepted but reported through `warnings` when given.
CnfFormula parse_dimacs(std::istream& in, std::vector<std::string>* warnings = nullptr);
CnfFormula parse_dimacs(const std::string& text, std::vector<std::string>* warnings = nullptr);

// Emits DIMACS CNF with LF line endings; parse_dimacs(emit_dimacs(f)) == f.
void emit_dimacs(const CnfFormula& formula, std::ostream& out);
std::string emit_dimacs(const CnfFormula& formula);

}  // namespace wlrni
