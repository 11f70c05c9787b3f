#include "wlrni/dimacs.hpp"

#include <sstream>

namespace wlrni {

CnfFormula parse_dimacs(std::istream& in, std::vector<std::string>* warnings) {
  CnfFormula formula;
  int declared_clauses = -1;
  bool header_seen = false;
  int line_no = 0;
  std::string line;
  Clause current;

  auto fail = [&](const std::string& msg) -> void {
    throw DimacsParseError(line_no, msg);
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == 'c') continue;
    if (line[0] == 'p') {
      if (header_seen) fail("duplicate header");
      std::istringstream hs(line);
      std::string p, fmt;
      int v = -1, c = -1;
      hs >> p >> fmt >> v >> c;
      if (hs.fail() || fmt != "cnf" || v < 0 || c < 0) fail("malformed header");
      formula.num_vars = v;
      declared_clauses = c;
      header_seen = true;
      continue;
    }
    if (!header_seen) fail("clause before header");
    std::istringstream ls(line);
    long long lit;
    while (ls >> lit) {
      if (lit == 0) {
        if (current.literals.empty()) fail("empty clause");
        if (warnings && current.is_tautology())
          warnings->push_back("tautological clause ending at line " +
                              std::to_string(line_no));
        formula.clauses.push_back(std::move(current));
        current = Clause{};
        continue;
      }
      long long var = lit > 0 ? lit : -lit;
      if (var > formula.num_vars)
        fail("literal " + std::to_string(lit) + " out of range (|id| > " +
             std::to_string(formula.num_vars) + ")");
      current.literals.push_back({static_cast<int>(var - 1), lit < 0});
    }
    if (!ls.eof()) fail("non-integer token in clause");
  }
  ++line_no;
  if (!header_seen) fail("missing header");
  if (!current.literals.empty()) fail("unterminated clause at end of input");
  if (declared_clauses != static_cast<int>(formula.clauses.size()))
    fail("clause count mismatch: header declares " +
         std::to_string(declared_clauses) + ", found " +
         std::to_string(formula.clauses.size()));
  return formula;
}

CnfFormula parse_dimacs(const std::string& text, std::vector<std::string>* warnings) {
  std::istringstream in(text);
  return parse_dimacs(in, warnings);
}

void emit_dimacs(const CnfFormula& formula, std::ostream& out) {
  out << "p cnf " << formula.num_vars << " " << formula.clauses.size() << "\n";
  for (const Clause& c : formula.clauses) {
    for (const Literal& l : c.literals)
      out << (l.negated ? -(l.var + 1) : (l.var + 1)) << " ";
    out << "0\n";
  }
}

std::string emit_dimacs(const CnfFormula& formula) {
  std::ostringstream out;
  emit_dimacs(formula, out);
  return out.str();
}

}  // namespace wlrni
