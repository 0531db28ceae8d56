/* sat.hpp -- propositional decision procedures for entailment and equivalence
 *
 * Copyright (c) 2026 The Arcane Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arcane/bool_expr.hpp"
#include "arcane/temporal.hpp"

namespace arcane {

/// CNF with DIMACS-style signed literals (variable indices start at 1).
/// An empty clause list is TRUE; a formula containing an empty clause is
/// UNSAT.
struct CnfFormula {
    std::vector<std::vector<int>> clauses;
    std::map<std::string, int> variables;

    int var(const std::string& name);
};

/// Default cap on distinct timed atoms per query; refused queries are
/// treated as "not entailed" by callers.
inline constexpr int kVarBudget = 64;

/// Complete DPLL with unit propagation and pure-literal elimination.
bool is_sat(const CnfFormula& f);

/// Tseitin transformation; fresh variables are named "_tN". The returned
/// formula is satisfiable iff `e` is (equisatisfiable encoding, with the
/// root asserted).
CnfFormula to_cnf(const BoolExprPtr& e);

/// Add clauses asserting `e` to an existing CNF (shared variable namespace).
void add_assertion(CnfFormula& f, const BoolExprPtr& e);

/// True iff pre entails the timed literal: Unsat(pre && !lit). `pre` is a
/// boolean expression over timed atom names ("a@0"). Returns nullopt when
/// the distinct-atom budget is exceeded (caller treats as not entailed).
std::optional<bool> entails(const BoolExprPtr& pre, const TimedLiteral& lit,
                            int budget = kVarBudget);

/// Generalized entailment: Unsat(pre && !(e stamped at offset)).
std::optional<bool> entails_expr(const BoolExprPtr& pre, const BoolExprPtr& e, int offset,
                                 int budget = kVarBudget);

/// Conjunction of an expansion set as a formula over timed atoms:
/// for each expansion, (AND pre buckets) -> (AND post buckets).
BoolExprPtr expansion_formula(const ExpansionSet& set);

/// e1 => e2 over the shared timed-atom namespace (both sets of expansions
/// conjoined). Nullopt when the variable budget is exceeded.
std::optional<bool> implies(const ExpansionSet& e1, const ExpansionSet& e2,
                            int budget = kVarBudget);

/// Both implication directions (two UNSAT queries).
std::optional<bool> equivalent(const ExpansionSet& e1, const ExpansionSet& e2,
                               int budget = kVarBudget);

/// Satisfiability of a boolean expression (Tseitin + DPLL).
bool expr_sat(const BoolExprPtr& e);

/// Per-assignment satisfying set over the first n atoms (lexicographic atom
/// order, little-endian assignment index). Refused for n > 20.
struct SatSet {
    int atom_count = 0;
    std::vector<std::uint64_t> bits;

    bool test(std::uint64_t i) const { return (bits[i / 64] >> (i % 64)) & 1; }
    std::uint64_t count() const;
};

std::optional<SatSet> truth_table_sat_set(const BoolExprPtr& e,
                                          const std::vector<std::string>& atoms);

/// Jaccard index of two satisfying sets over the same atom list;
/// both-empty returns 1.
double sat_set_jaccard(const SatSet& a, const SatSet& b);

}  // namespace arcane
