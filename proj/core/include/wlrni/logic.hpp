#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wlrni {

// A literal over a 0-based variable index.
struct Literal {
  int var = 0;
  bool negated = false;

  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal&, const Literal&) = default;

  Literal complement() const { return {var, !negated}; }
};

inline Literal pos(int var) { return {var, false}; }
inline Literal neg(int var) { return {var, true}; }

struct Clause {
  std::vector<Literal> literals;

  int width() const { return static_cast<int>(literals.size()); }
  bool contains(const Literal& l) const;
  bool contains_var(int var) const;
  // Both polarities of some variable present.
  bool is_tautology() const;

  friend bool operator==(const Clause&, const Clause&) = default;
};

struct CnfFormula {
  int num_vars = 0;
  std::vector<Clause> clauses;

  // Throws std::invalid_argument on empty clauses, duplicate literals in a
  // clause, or out-of-range variable indices. Tautologies are legal here;
  // callers that forbid them check is_tautology per clause.
  void check_well_formed() const;

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

// Total truth assignment for variables 0..num_vars-1.
struct Assignment {
  std::vector<bool> values;

  bool value(int var) const { return values.at(static_cast<std::size_t>(var)); }
  bool satisfies(const Literal& l) const { return value(l.var) != l.negated; }
};

struct SatResult {
  bool satisfiable = false;
  std::optional<Assignment> witness;  // present iff satisfiable

  static SatResult sat(Assignment a) { return {true, std::move(a)}; }
  static SatResult unsat() { return {false, std::nullopt}; }
};

// True iff every clause has at least one literal made true by `a`.
// Throws std::invalid_argument if `a` does not cover all variables.
bool eval_assignment(const CnfFormula& formula, const Assignment& a);

// DPLL with unit propagation and pure-literal elimination. Branches on the
// smallest-index unassigned variable, trying false before true, so the
// returned witness is deterministic. Tautological clauses in the input are
// dropped before solving. A satisfiable verdict always carries a witness that
// has been re-verified with eval_assignment.
SatResult solve_sat(const CnfFormula& formula);

// Independent oracle: scans all 2^num_vars assignments. Refuses formulas with
// more than `max_vars` variables.
SatResult enumerate_sat_bruteforce(const CnfFormula& formula, int max_vars = 20);

}  // namespace wlrni
