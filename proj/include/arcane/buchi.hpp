/* buchi.hpp -- LTL to Buchi construction, lasso acceptance, Jaccard scoring
 *
 * Copyright (c) 2026 The Arcane Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arcane/bool_expr.hpp"
#include "arcane/lasso.hpp"
#include "arcane/ltl.hpp"

namespace arcane {

/// Nondeterministic Buchi automaton over subsets of its AP list. Transition
/// guards are boolean expressions over the APs; a letter takes an edge when
/// the guard evaluates true under the letter's bit assignment.
struct BuchiAutomaton {
    struct Edge {
        BoolExprPtr guard;
        int target;
    };

    std::vector<std::string> alphabet_atoms;
    std::vector<std::vector<Edge>> transitions;  // indexed by state
    int initial = 0;
    std::vector<bool> accepting;

    int state_count() const { return static_cast<int>(transitions.size()); }
};

inline constexpr int kAtomBudget = 16;

/// Tableau construction with on-the-fly degeneralization. The input must be
/// in NNF. Returns nullopt above the atom budget.
std::optional<BuchiAutomaton> ltl_to_buchi(const LtlPtr& f, int atom_budget = kAtomBudget);

/// Whether an accepting run exists on prefix . loop^omega: the reachable
/// state set is pushed through the prefix, then the product of states and
/// loop positions is searched for a reachable cycle through an accepting
/// state. Lasso letters must be over the automaton's AP list.
bool accepts(const BuchiAutomaton& aut, const Lasso& lam);

/// Direct LTL evaluation on an ultimately periodic word: dynamic programming
/// over quotient positions with fixpoint iteration for U/R/G/F. Independent
/// of the automaton path and must agree with accepts(ltl_to_buchi(f), .).
bool eval_on_lasso(const LtlPtr& f, const Lasso& lam,
                   const std::vector<std::string>& pool_ap);

struct AcceptanceVector {
    std::uint64_t pool_hash = 0;
    std::vector<bool> bits;

    std::uint64_t accepted_count() const;
};

/// Accept bit per pool lasso; pool letters are projected onto the
/// automaton's APs by masking (name-based).
AcceptanceVector acceptance_vector(const BuchiAutomaton& aut, const LassoPool& pool);

/// Jaccard index of the accepted subsets; 1.0 when both are empty.
/// Throws ContractError when the vectors come from different pools.
double jaccard(const AcceptanceVector& a, const AcceptanceVector& b);

/// Process-wide count of accepts() calls (acceleration bookkeeping).
std::uint64_t acceptance_call_count();
void reset_acceptance_call_count();

}  // namespace arcane
