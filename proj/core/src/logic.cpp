#include "wlrni/logic.hpp"

#include <algorithm>
#include <set>

namespace wlrni {

bool Clause::contains(const Literal& l) const {
  return std::find(literals.begin(), literals.end(), l) != literals.end();
}

bool Clause::contains_var(int var) const {
  return std::any_of(literals.begin(), literals.end(),
                     [var](const Literal& l) { return l.var == var; });
}

bool Clause::is_tautology() const {
  for (const Literal& l : literals) {
    if (contains(l.complement())) return true;
  }
  return false;
}

void CnfFormula::check_well_formed() const {
  if (num_vars < 0) throw std::invalid_argument("negative variable count");
  for (std::size_t ci = 0; ci < clauses.size(); ++ci) {
    const Clause& c = clauses[ci];
    if (c.literals.empty())
      throw std::invalid_argument("empty clause at index " + std::to_string(ci));
    std::set<std::pair<int, bool>> seen;
    for (const Literal& l : c.literals) {
      if (l.var < 0 || l.var >= num_vars)
        throw std::invalid_argument("literal variable out of range in clause " +
                                    std::to_string(ci));
      if (!seen.insert({l.var, l.negated}).second)
        throw std::invalid_argument("duplicate literal in clause " +
                                    std::to_string(ci));
    }
  }
}

bool eval_assignment(const CnfFormula& formula, const Assignment& a) {
  if (static_cast<int>(a.values.size()) < formula.num_vars)
    throw std::invalid_argument("assignment does not cover all variables");
  for (const Clause& c : formula.clauses) {
    bool sat = false;
    for (const Literal& l : c.literals) {
      if (a.satisfies(l)) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

namespace {

enum class VarState : unsigned char { Unset, False, True };

struct DpllState {
  const std::vector<Clause>* clauses;
  int num_vars;
  std::vector<VarState> assign;

  bool lit_true(const Literal& l) const {
    VarState s = assign[static_cast<std::size_t>(l.var)];
    if (s == VarState::Unset) return false;
    return (s == VarState::True) != l.negated;
  }
  bool lit_false(const Literal& l) const {
    VarState s = assign[static_cast<std::size_t>(l.var)];
    if (s == VarState::Unset) return false;
    return (s == VarState::True) == l.negated;
  }
};

// Unit propagation + pure-literal elimination to fixpoint.
// Returns false on conflict (some clause fully falsified).
bool propagate(DpllState& st) {
  bool changed = true;
  while (changed) {
    changed = false;
    // units and conflicts
    for (const Clause& c : *st.clauses) {
      int unassigned = 0;
      const Literal* unit = nullptr;
      bool sat = false;
      for (const Literal& l : c.literals) {
        if (st.lit_true(l)) {
          sat = true;
          break;
        }
        if (!st.lit_false(l)) {
          ++unassigned;
          unit = &l;
        }
      }
      if (sat) continue;
      if (unassigned == 0) return false;
      if (unassigned == 1) {
        st.assign[static_cast<std::size_t>(unit->var)] =
            unit->negated ? VarState::False : VarState::True;
        changed = true;
      }
    }
    if (changed) continue;
    // pure literals over still-active clauses
    std::vector<unsigned char> seen_pos(static_cast<std::size_t>(st.num_vars), 0);
    std::vector<unsigned char> seen_neg(static_cast<std::size_t>(st.num_vars), 0);
    for (const Clause& c : *st.clauses) {
      bool sat = false;
      for (const Literal& l : c.literals)
        if (st.lit_true(l)) {
          sat = true;
          break;
        }
      if (sat) continue;
      for (const Literal& l : c.literals) {
        if (st.lit_false(l)) continue;
        (l.negated ? seen_neg : seen_pos)[static_cast<std::size_t>(l.var)] = 1;
      }
    }
    for (int v = 0; v < st.num_vars; ++v) {
      auto vi = static_cast<std::size_t>(v);
      if (st.assign[vi] != VarState::Unset) continue;
      if (seen_pos[vi] && !seen_neg[vi]) {
        st.assign[vi] = VarState::True;
        changed = true;
      } else if (seen_neg[vi] && !seen_pos[vi]) {
        st.assign[vi] = VarState::False;
        changed = true;
      }
    }
  }
  return true;
}

bool all_clauses_satisfied(const DpllState& st) {
  for (const Clause& c : *st.clauses) {
    bool sat = false;
    for (const Literal& l : c.literals)
      if (st.lit_true(l)) {
        sat = true;
        break;
      }
    if (!sat) return false;
  }
  return true;
}

bool dpll(DpllState& st) {
  if (!propagate(st)) return false;
  if (all_clauses_satisfied(st)) return true;
  int branch = -1;
  for (int v = 0; v < st.num_vars; ++v) {
    if (st.assign[static_cast<std::size_t>(v)] == VarState::Unset) {
      branch = v;
      break;
    }
  }
  if (branch < 0) return false;  // total assignment but some clause falsified
  for (VarState value : {VarState::False, VarState::True}) {
    DpllState saved = st;
    st.assign[static_cast<std::size_t>(branch)] = value;
    if (dpll(st)) return true;
    st = saved;
  }
  return false;
}

}  // namespace

SatResult solve_sat(const CnfFormula& formula) {
  formula.check_well_formed();

  // External input may carry tautological clauses; they are vacuous.
  std::vector<Clause> active;
  active.reserve(formula.clauses.size());
  for (const Clause& c : formula.clauses)
    if (!c.is_tautology()) active.push_back(c);

  DpllState st{&active, formula.num_vars,
               std::vector<VarState>(static_cast<std::size_t>(formula.num_vars),
                                     VarState::Unset)};
  if (!dpll(st)) return SatResult::unsat();

  Assignment witness;
  witness.values.resize(static_cast<std::size_t>(formula.num_vars));
  for (int v = 0; v < formula.num_vars; ++v)
    witness.values[static_cast<std::size_t>(v)] =
        st.assign[static_cast<std::size_t>(v)] == VarState::True;
  if (!eval_assignment(formula, witness))
    throw std::logic_error("DPLL produced a non-satisfying witness");
  return SatResult::sat(std::move(witness));
}

SatResult enumerate_sat_bruteforce(const CnfFormula& formula, int max_vars) {
  formula.check_well_formed();
  if (formula.num_vars > max_vars)
    throw std::invalid_argument("brute-force cap exceeded: " +
                                std::to_string(formula.num_vars) + " > " +
                                std::to_string(max_vars) + " variables");
  Assignment a;
  a.values.resize(static_cast<std::size_t>(formula.num_vars));
  std::uint64_t total = 1ULL << formula.num_vars;
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    for (int v = 0; v < formula.num_vars; ++v)
      a.values[static_cast<std::size_t>(v)] = (bits >> v) & 1;
    if (eval_assignment(formula, a)) return SatResult::sat(a);
  }
  return SatResult::unsat();
}

}  // namespace wlrni
