/* ltl.hpp -- LTL formulas in negation normal form
 *
 * Copyright (c) 2026 The Arcane Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace arcane {

enum class LtlOp {
    True,
    False,
    Atom,
    NotAtom,  // negation only on atoms (NNF)
    And,
    Or,
    Next,
    Globally,
    Finally,
    Until,
    Release,
};

class LtlFormula;
using LtlPtr = std::shared_ptr<const LtlFormula>;

class LtlFormula {
public:
    LtlOp op;
    std::string atom;             // Atom / NotAtom
    std::vector<LtlPtr> children; // And/Or: n-ary; Next/G/F: 1; U/R: 2

    static LtlPtr tt();
    static LtlPtr ff();
    static LtlPtr make_atom(std::string name);
    static LtlPtr not_atom(std::string name);
    static LtlPtr make_and(std::vector<LtlPtr> cs);
    static LtlPtr make_or(std::vector<LtlPtr> cs);
    static LtlPtr next(LtlPtr c);
    static LtlPtr globally(LtlPtr c);
    static LtlPtr finally(LtlPtr c);
    static LtlPtr until(LtlPtr l, LtlPtr r);
    static LtlPtr release(LtlPtr l, LtlPtr r);
};

/// NNF negation (dualizes operators, flips literals).
LtlPtr ltl_negate(const LtlPtr& f);

/// Constant propagation: folds true/false through every operator.
LtlPtr ltl_simplify_constants(const LtlPtr& f);

std::string to_string(const LtlPtr& f);

void collect_atoms(const LtlPtr& f, std::set<std::string>& out);

/// Ordered list of distinct atoms (lexicographic).
std::vector<std::string> ltl_atoms(const LtlPtr& f);

}  // namespace arcane
