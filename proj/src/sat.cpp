/* sat.cpp
 *
 * Copyright (c) 2026 The Arcane Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "arcane/sat.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstdlib>
#include <set>

namespace arcane {

int CnfFormula::var(const std::string& name) {
    auto it = variables.find(name);
    if (it != variables.end()) return it->second;
    int idx = static_cast<int>(variables.size()) + 1;
    variables.emplace(name, idx);
    return idx;
}

namespace {

std::vector<std::vector<int>> assign_literal(const std::vector<std::vector<int>>& clauses,
                                             int lit) {
    std::vector<std::vector<int>> next;
    next.reserve(clauses.size());
    for (const auto& c : clauses) {
        bool satisfied = false;
        std::vector<int> nc;
        nc.reserve(c.size());
        for (int l : c) {
            if (l == lit) {
                satisfied = true;
                break;
            }
            if (l != -lit) nc.push_back(l);
        }
        if (!satisfied) next.push_back(std::move(nc));
    }
    return next;
}

bool dpll(std::vector<std::vector<int>> clauses) {
    for (;;) {
        if (clauses.empty()) return true;
        int forced = 0;
        for (const auto& c : clauses) {
            if (c.empty()) return false;
            if (c.size() == 1) {
                forced = c[0];
                break;
            }
        }
        if (forced == 0) {
            // Pure-literal elimination.
            std::map<int, int> polarity;  // var -> bit 0 pos, bit 1 neg
            for (const auto& c : clauses)
                for (int l : c) polarity[std::abs(l)] |= l > 0 ? 1 : 2;
            for (const auto& [v, m] : polarity) {
                if (m != 3) {
                    forced = m == 1 ? v : -v;
                    break;
                }
            }
        }
        if (forced == 0) break;
        clauses = assign_literal(clauses, forced);
    }
    const int branch = clauses[0][0];
    if (dpll(assign_literal(clauses, branch))) return true;
    return dpll(assign_literal(clauses, -branch));
}

// Tseitin encoding; returns the literal equivalent to `e`.
int tseitin(CnfFormula& f, const BoolExprPtr& e, int& aux_counter) {
    switch (e->op) {
        case BoolOp::Atom:
            return f.var(e->atom);
        case BoolOp::Const: {
            int t = f.var("_t" + std::to_string(++aux_counter));
            f.clauses.push_back({e->value ? t : -t});
            return t;
        }
        case BoolOp::Not:
            return -tseitin(f, e->children[0], aux_counter);
        case BoolOp::And:
        case BoolOp::Or: {
            std::vector<int> lits;
            lits.reserve(e->children.size());
            for (const auto& c : e->children) lits.push_back(tseitin(f, c, aux_counter));
            int t = f.var("_t" + std::to_string(++aux_counter));
            if (e->op == BoolOp::And) {
                std::vector<int> big{t};
                for (int l : lits) {
                    f.clauses.push_back({-t, l});
                    big.push_back(-l);
                }
                f.clauses.push_back(std::move(big));
            } else {
                std::vector<int> big{-t};
                for (int l : lits) {
                    f.clauses.push_back({t, -l});
                    big.push_back(l);
                }
                f.clauses.push_back(std::move(big));
            }
            return t;
        }
    }
    return 0;
}

int next_aux_start(const CnfFormula& f) {
    // Fresh-variable names continue past any "_tN" already present.
    int max_aux = 0;
    for (const auto& [name, idx] : f.variables) {
        if (name.rfind("_t", 0) == 0) max_aux = std::max(max_aux, std::atoi(name.c_str() + 2));
    }
    return max_aux;
}

}  // namespace

bool is_sat(const CnfFormula& f) { return dpll(f.clauses); }

void add_assertion(CnfFormula& f, const BoolExprPtr& e) {
    BoolExprPtr n = normalize(e);
    if (n->is_const(true)) return;
    if (n->is_const(false)) {
        f.clauses.push_back({});
        return;
    }
    int aux = next_aux_start(f);
    int root = tseitin(f, n, aux);
    f.clauses.push_back({root});
}

CnfFormula to_cnf(const BoolExprPtr& e) {
    CnfFormula f;
    add_assertion(f, e);
    return f;
}

std::optional<bool> entails(const BoolExprPtr& pre, const TimedLiteral& lit, int budget) {
    BoolExprPtr l = BoolExpr::make_atom(lit.atom);
    if (!lit.positive) l = BoolExpr::make_not(l);
    return entails_expr(pre, l, lit.offset, budget);
}

std::optional<bool> entails_expr(const BoolExprPtr& pre, const BoolExprPtr& e, int offset,
                                 int budget) {
    BoolExprPtr stamped = timed_expr(e, offset);
    std::set<std::string> atoms;
    collect_atoms(pre, atoms);
    collect_atoms(stamped, atoms);
    if (static_cast<int>(atoms.size()) > budget) return std::nullopt;

    CnfFormula f;
    add_assertion(f, pre);
    add_assertion(f, BoolExpr::make_not(stamped));
    return !is_sat(f);
}

BoolExprPtr expansion_formula(const ExpansionSet& set) {
    std::vector<BoolExprPtr> conjuncts;
    for (const auto& exp : set.expansions) {
        std::vector<BoolExprPtr> pre_parts, post_parts;
        for (const auto& [off, e] : exp.pre_buckets) pre_parts.push_back(timed_expr(e, off));
        for (const auto& [off, e] : exp.post_buckets) post_parts.push_back(timed_expr(e, off));
        BoolExprPtr post = post_parts.empty() ? BoolExpr::make_const(true)
                                              : BoolExpr::make_and(std::move(post_parts));
        if (pre_parts.empty()) {
            conjuncts.push_back(post);
        } else {
            conjuncts.push_back(BoolExpr::make_or(
                {BoolExpr::make_not(BoolExpr::make_and(std::move(pre_parts))), post}));
        }
    }
    if (conjuncts.empty()) return BoolExpr::make_const(true);
    return BoolExpr::make_and(std::move(conjuncts));
}

std::optional<bool> implies(const ExpansionSet& e1, const ExpansionSet& e2, int budget) {
    BoolExprPtr f1 = expansion_formula(e1);
    BoolExprPtr f2 = expansion_formula(e2);
    std::set<std::string> atoms;
    collect_atoms(f1, atoms);
    collect_atoms(f2, atoms);
    if (static_cast<int>(atoms.size()) > budget) return std::nullopt;

    CnfFormula f;
    add_assertion(f, f1);
    add_assertion(f, BoolExpr::make_not(f2));
    return !is_sat(f);
}

std::optional<bool> equivalent(const ExpansionSet& e1, const ExpansionSet& e2, int budget) {
    auto fwd = implies(e1, e2, budget);
    if (!fwd) return std::nullopt;
    if (!*fwd) return false;
    auto bwd = implies(e2, e1, budget);
    if (!bwd) return std::nullopt;
    return *bwd;
}

bool expr_sat(const BoolExprPtr& e) {
    BoolExprPtr n = normalize(e);
    if (n->op == BoolOp::Const) return n->value;
    return is_sat(to_cnf(n));
}

std::uint64_t SatSet::count() const {
    std::uint64_t total = 0;
    for (std::uint64_t w : bits) total += static_cast<std::uint64_t>(std::popcount(w));
    return total;
}

std::optional<SatSet> truth_table_sat_set(const BoolExprPtr& e,
                                          const std::vector<std::string>& atoms) {
    const int n = static_cast<int>(atoms.size());
    if (n > 20) return std::nullopt;
    SatSet set;
    set.atom_count = n;
    const std::uint64_t total = std::uint64_t(1) << n;
    set.bits.assign((total + 63) / 64, 0);
    for (std::uint64_t i = 0; i < total; ++i) {
        bool sat = eval(e, [&](const std::string& name) {
            for (int j = 0; j < n; ++j)
                if (atoms[static_cast<size_t>(j)] == name) return ((i >> j) & 1) != 0;
            return false;
        });
        if (sat) set.bits[i / 64] |= std::uint64_t(1) << (i % 64);
    }
    return set;
}

double sat_set_jaccard(const SatSet& a, const SatSet& b) {
    assert(a.atom_count == b.atom_count);
    std::uint64_t inter = 0, uni = 0;
    for (size_t i = 0; i < a.bits.size(); ++i) {
        inter += static_cast<std::uint64_t>(std::popcount(a.bits[i] & b.bits[i]));
        uni += static_cast<std::uint64_t>(std::popcount(a.bits[i] | b.bits[i]));
    }
    if (uni == 0) return 1.0;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace arcane
