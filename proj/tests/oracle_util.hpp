/* oracle_util.hpp -- independent test oracles and random generators
 *
 * Copyright (c) 2026 The Arcane Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 *
 * Everything here is test-side machinery: brute-force and cycle-wise
 * comparisons that stay independent of the code paths they check, plus
 * seeded random generators for property suites.
 */

#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "arcane/assertion.hpp"
#include "arcane/common.hpp"
#include "arcane/lasso.hpp"
#include "arcane/ltl.hpp"
#include "arcane/sat.hpp"
#include "arcane/temporal.hpp"

namespace testutil {

using namespace arcane;

inline BoolExprPtr random_expr(Rng& rng, int natoms, int depth) {
    if (depth == 0 || rng.below(4) == 0) {
        if (rng.below(8) == 0) return BoolExpr::make_const(rng.below(2) == 1);
        return BoolExpr::make_atom(std::string(1, static_cast<char>('a' + rng.below(natoms))));
    }
    switch (rng.below(3)) {
        case 0:
            return BoolExpr::make_not(random_expr(rng, natoms, depth - 1));
        case 1: {
            std::vector<BoolExprPtr> cs;
            const int n = 2 + static_cast<int>(rng.below(2));
            for (int i = 0; i < n; ++i) cs.push_back(random_expr(rng, natoms, depth - 1));
            return BoolExpr::make_and(std::move(cs));
        }
        default: {
            std::vector<BoolExprPtr> cs;
            const int n = 2 + static_cast<int>(rng.below(2));
            for (int i = 0; i < n; ++i) cs.push_back(random_expr(rng, natoms, depth - 1));
            return BoolExpr::make_or(std::move(cs));
        }
    }
}

/// One random key-preserving rewrite applied somewhere in the term:
/// commutation, reassociation, double negation, duplication (idempotence) or
/// a neutral-constant insertion.
inline BoolExprPtr random_equivalence_rewrite(Rng& rng, const BoolExprPtr& e) {
    // Recurse into a child half of the time.
    if (!e->children.empty() && rng.below(2) == 0) {
        auto cs = e->children;
        size_t i = rng.below(cs.size());
        cs[i] = random_equivalence_rewrite(rng, cs[i]);
        if (e->op == BoolOp::Not) return BoolExpr::make_not(cs[0]);
        return e->op == BoolOp::And ? BoolExpr::make_and(std::move(cs))
                                    : BoolExpr::make_or(std::move(cs));
    }
    switch (rng.below(5)) {
        case 0:  // double negation anywhere
            return BoolExpr::make_not(BoolExpr::make_not(e));
        case 1:  // idempotent duplication
            return e->op == BoolOp::And ? BoolExpr::make_and({e->children.empty() ? e : e, e})
                                        : BoolExpr::make_and({e, e});
        case 2:  // neutral constant
            return BoolExpr::make_and({e, BoolExpr::make_const(true)});
        case 3: {  // commutation
            if ((e->op == BoolOp::And || e->op == BoolOp::Or) && e->children.size() >= 2) {
                auto cs = e->children;
                std::swap(cs[0], cs[cs.size() - 1]);
                return e->op == BoolOp::And ? BoolExpr::make_and(std::move(cs))
                                            : BoolExpr::make_or(std::move(cs));
            }
            return BoolExpr::make_or({e, e});
        }
        default: {  // reassociation
            if ((e->op == BoolOp::And || e->op == BoolOp::Or) && e->children.size() >= 3) {
                auto cs = e->children;
                BoolExprPtr grouped = e->op == BoolOp::And
                                          ? BoolExpr::make_and({cs[0], cs[1]})
                                          : BoolExpr::make_or({cs[0], cs[1]});
                std::vector<BoolExprPtr> rest{grouped};
                for (size_t i = 2; i < cs.size(); ++i) rest.push_back(cs[i]);
                return e->op == BoolOp::And ? BoolExpr::make_and(std::move(rest))
                                            : BoolExpr::make_or(std::move(rest));
            }
            return BoolExpr::make_and({BoolExpr::make_const(true), e});
        }
    }
}

inline Delay random_delay(Rng& rng, int max_delay) {
    std::uint32_t lo = static_cast<std::uint32_t>(rng.below(static_cast<std::uint64_t>(max_delay) + 1));
    if (rng.below(4) == 0) {
        std::uint32_t hi = lo + static_cast<std::uint32_t>(rng.below(2) + 1);
        return Delay{lo, hi};
    }
    return Delay{lo, lo};
}

inline Sequence random_sequence(Rng& rng, int natoms, int max_delay, int max_items) {
    Sequence s;
    s.head = random_expr(rng, natoms, 2);
    const int extra = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_items)));
    for (int i = 0; i < extra; ++i) {
        Delay d = random_delay(rng, max_delay);
        if (d.lo == 0 && d.hi == 0) d = Delay{1, 1};
        s.tail.emplace_back(d, random_expr(rng, natoms, 2));
    }
    return s;
}

inline Assertion random_assertion(Rng& rng, int natoms, int max_delay, const std::string& prefix) {
    static int counter = 0;
    Assertion a;
    a.id = prefix + std::to_string(counter++);
    if (rng.below(4) == 0) {
        a.kind = AssertionKind::Propositional;
        a.antecedent = Sequence{Delay{}, BoolExpr::make_const(true), {}};
        a.consequent = Sequence{Delay{}, random_expr(rng, natoms, 2), {}};
        return a;
    }
    a.kind = AssertionKind::Implication;
    a.antecedent = random_sequence(rng, natoms, max_delay, 2);
    a.consequent = random_sequence(rng, natoms, max_delay, 2);
    if (rng.below(3) == 0) a.consequent.lead = random_delay(rng, max_delay);
    if (rng.below(8) == 0) a.clock = "clk";
    return a;
}

inline std::vector<Assertion> random_assertion_set(Rng& rng, int max_size, int natoms,
                                                   int max_delay, const std::string& prefix) {
    std::vector<Assertion> set;
    const int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_size)));
    for (int i = 0; i < n; ++i) {
        Assertion a = random_assertion(rng, natoms, max_delay, prefix);
        a.clock.reset();  // single-clock sets exercise the merge paths harder
        set.push_back(std::move(a));
    }
    // Bias toward genuinely related sets: sometimes duplicate or weaken a member.
    if (n >= 2 && rng.below(2) == 0) {
        Assertion copy = set[rng.below(set.size())];
        copy.id = prefix + "_dup" + std::to_string(rng.below(1000));
        set[set.size() - 1] = std::move(copy);
    }
    return set;
}

inline LtlPtr random_ltl(Rng& rng, int natoms, int depth) {
    if (depth == 0 || rng.below(4) == 0) {
        std::string atom(1, static_cast<char>('a' + rng.below(natoms)));
        switch (rng.below(4)) {
            case 0:
                return LtlFormula::make_atom(atom);
            case 1:
                return LtlFormula::not_atom(atom);
            case 2:
                return LtlFormula::tt();
            default:
                return LtlFormula::make_atom(atom);
        }
    }
    switch (rng.below(7)) {
        case 0:
            return LtlFormula::make_and({random_ltl(rng, natoms, depth - 1),
                                         random_ltl(rng, natoms, depth - 1)});
        case 1:
            return LtlFormula::make_or({random_ltl(rng, natoms, depth - 1),
                                        random_ltl(rng, natoms, depth - 1)});
        case 2:
            return LtlFormula::next(random_ltl(rng, natoms, depth - 1));
        case 3:
            return LtlFormula::globally(random_ltl(rng, natoms, depth - 1));
        case 4:
            return LtlFormula::finally(random_ltl(rng, natoms, depth - 1));
        case 5:
            return LtlFormula::until(random_ltl(rng, natoms, depth - 1),
                                     random_ltl(rng, natoms, depth - 1));
        default:
            return LtlFormula::release(random_ltl(rng, natoms, depth - 1),
                                       random_ltl(rng, natoms, depth - 1));
    }
}

/// Letters from bit strings, most significant atom first as written:
/// make_lasso({"10"}, {"01"}) over ap = {a, b} sets a=1,b=0 then a=0,b=1.
inline Lasso make_lasso(const std::vector<std::string>& prefix,
                        const std::vector<std::string>& loop) {
    auto conv = [](const std::string& bits) {
        Letter l(bits.size());
        for (size_t i = 0; i < bits.size(); ++i) l.set(i, bits[i] == '1');
        return l;
    };
    Lasso lam;
    for (const auto& b : prefix) lam.prefix.push_back(conv(b));
    for (const auto& b : loop) lam.loop.push_back(conv(b));
    return lam;
}

/// Cycle-wise conjunction comparison over a fresh shared pool; independent of
/// both the LTL evaluation path and the production certificate.
inline bool conjunction_equal_on_lassos(const std::vector<Assertion>& lhs,
                                        const std::vector<Assertion>& rhs, int samples,
                                        std::uint64_t seed) {
    std::set<std::string> atoms;
    for (const auto* set : {&lhs, &rhs}) {
        for (const auto& a : *set) {
            auto ap = atomic_propositions(a);
            atoms.insert(ap.begin(), ap.end());
        }
    }
    std::vector<std::string> ap(atoms.begin(), atoms.end());
    LassoPool pool = sample_lassos(ap, samples, seed);
    auto conj = [&](const std::vector<Assertion>& set, const Lasso& lam) {
        for (const auto& a : set)
            if (!sva_eval_on_lasso(a, lam, pool.ap)) return false;
        return true;
    };
    for (const auto& lam : pool.lassos) {
        if (conj(lhs, lam) != conj(rhs, lam)) return false;
    }
    return true;
}

/// Merge every member's expansions into one set (the conjunction formula).
inline std::optional<ExpansionSet> set_expansions(const std::vector<Assertion>& set) {
    ExpansionSet merged;
    for (const auto& a : set) {
        auto e = align(a);
        if (!e) return std::nullopt;
        for (auto& exp : e->expansions) merged.expansions.push_back(std::move(exp));
    }
    return merged;
}

/// Time-stamped SAT equivalence of two assertion sets, when both align.
/// nullopt: not alignable or budget refusal (caller skips, never fails).
inline std::optional<bool> sets_sat_equivalent(const std::vector<Assertion>& lhs,
                                               const std::vector<Assertion>& rhs) {
    auto el = set_expansions(lhs);
    auto er = set_expansions(rhs);
    if (!el || !er) return std::nullopt;
    return equivalent(*el, *er, 256);
}

}  // namespace testutil
