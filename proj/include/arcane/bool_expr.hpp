/* bool_expr.hpp -- boolean expression AST, normalization, canonical keys
 *
 * Copyright (c) 2026 The Arcane Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace arcane {

enum class BoolOp { Atom, Const, Not, And, Or };

class BoolExpr;
using BoolExprPtr = std::shared_ptr<const BoolExpr>;

/// Immutable boolean expression tree over named atomic propositions.
/// And/Or keep an ordered child list (arity >= 2 after normalization).
class BoolExpr {
public:
    BoolOp op;
    std::string atom;                   // Atom only
    bool value = false;                 // Const only
    std::vector<BoolExprPtr> children;  // Not (1), And/Or (>= 2 after normalize)

    static BoolExprPtr make_atom(std::string name);
    static BoolExprPtr make_const(bool v);
    static BoolExprPtr make_not(BoolExprPtr c);
    static BoolExprPtr make_and(std::vector<BoolExprPtr> cs);
    static BoolExprPtr make_or(std::vector<BoolExprPtr> cs);

    bool is_const(bool v) const { return op == BoolOp::Const && value == v; }
};

/// Serialized prefix form, e.g. "(& a (! b))". Child order is preserved.
std::string serialize(const BoolExprPtr& e);

/// Stable 64-bit structural hash of the serialized form.
std::uint64_t structural_hash(const BoolExprPtr& e);

bool structurally_equal(const BoolExprPtr& a, const BoolExprPtr& b);

/// Canonical normal form: flattens associative ops, folds constants,
/// removes double negation, deduplicates children (idempotence), and orders
/// children by their serialized normal form. Deterministic across platforms.
BoolExprPtr normalize(const BoolExprPtr& e);

/// Negation normal form (negations pushed to atoms). Input need not be
/// normalized; output is normalized.
BoolExprPtr nnf(const BoolExprPtr& e);

/// Normal form plus absorption (a && (a || b) => a and its dual), applied to
/// fixpoint. Equivalence-preserving; used by the intra-assertion rule.
BoolExprPtr simplify_absorb(const BoolExprPtr& e);

/// Canonical key: invariant under commutativity, associativity, idempotence,
/// double negation, and constant folding. Not a full equivalence decision.
std::string canonical_key(const BoolExprPtr& e);

void collect_atoms(const BoolExprPtr& e, std::set<std::string>& out);

/// Number of atom occurrences (not distinct names).
int atom_occurrences(const BoolExprPtr& e);

bool eval(const BoolExprPtr& e, const std::function<bool(const std::string&)>& assignment);

/// Rename every atom through the map; atoms absent from the map are kept.
BoolExprPtr rename_atoms(const BoolExprPtr& e,
                         const std::unordered_map<std::string, std::string>& map);

/// Timed atom name for SAT queries over time-stamped expansions.
inline std::string timed_name(const std::string& atom, int offset) {
    return atom + "@" + std::to_string(offset);
}

/// Stamp every atom with a cycle offset ("a" at offset 2 becomes "a@2").
BoolExprPtr timed_expr(const BoolExprPtr& e, int offset);

/// Infix rendering with minimal parentheses ("a && b || !c").
std::string to_string(const BoolExprPtr& e);

}  // namespace arcane
