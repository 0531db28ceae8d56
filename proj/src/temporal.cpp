/* temporal.cpp
 *
 * Copyright (c) 2026 The Arcane Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "arcane/temporal.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_map>

#include "arcane/common.hpp"

namespace arcane {

namespace {

struct Slot {
    Delay delay;
    BoolExprPtr expr;  // expression placed after this delay
};

std::vector<Slot> sequence_slots(const Sequence& s) {
    std::vector<Slot> slots;
    slots.push_back({s.lead, s.head});
    for (const auto& [d, e] : s.tail) slots.push_back({d, e});
    return slots;
}

void add_to_bucket(std::map<int, BoolExprPtr>& buckets, int offset, const BoolExprPtr& e) {
    auto it = buckets.find(offset);
    if (it == buckets.end())
        buckets[offset] = e;
    else
        it->second = BoolExpr::make_and({it->second, e});
}

void finish_buckets(std::map<int, BoolExprPtr>& buckets) {
    for (auto it = buckets.begin(); it != buckets.end();) {
        it->second = nnf(it->second);
        if (it->second->is_const(true))
            it = buckets.erase(it);
        else
            ++it;
    }
}

BoolExprPtr expr_to_ltl_boolexpr(const BoolExprPtr& e) { return nnf(e); }

LtlPtr boolexpr_to_ltl(const BoolExprPtr& e) {
    switch (e->op) {
        case BoolOp::Atom:
            return LtlFormula::make_atom(e->atom);
        case BoolOp::Const:
            return e->value ? LtlFormula::tt() : LtlFormula::ff();
        case BoolOp::Not:
            // NNF input: negations sit on atoms only.
            assert(e->children[0]->op == BoolOp::Atom);
            return LtlFormula::not_atom(e->children[0]->atom);
        case BoolOp::And:
        case BoolOp::Or: {
            std::vector<LtlPtr> cs;
            cs.reserve(e->children.size());
            for (const auto& c : e->children) cs.push_back(boolexpr_to_ltl(c));
            return e->op == BoolOp::And ? LtlFormula::make_and(std::move(cs))
                                        : LtlFormula::make_or(std::move(cs));
        }
    }
    return LtlFormula::ff();
}

LtlPtr shifted(const BoolExprPtr& e, int offset) {
    LtlPtr f = boolexpr_to_ltl(expr_to_ltl_boolexpr(e));
    for (int i = 0; i < offset; ++i) f = LtlFormula::next(f);
    return f;
}

}  // namespace

std::string TimedExpansion::serialize() const {
    std::string out = "pre{";
    for (const auto& [k, e] : pre_buckets) out += std::to_string(k) + ":" + arcane::serialize(e) + ";";
    out += "}post{";
    for (const auto& [k, e] : post_buckets)
        out += std::to_string(k) + ":" + arcane::serialize(e) + ";";
    out += "}";
    return out;
}

std::optional<ExpansionSet> align(const Assertion& a, int cap) {
    if (a.kind == AssertionKind::Propositional) {
        TimedExpansion exp;
        BoolExprPtr e = nnf(a.consequent.head);
        if (!e->is_const(true)) exp.post_buckets[0] = e;
        exp.max_offset = 0;
        return ExpansionSet{{exp}};
    }

    std::vector<Slot> pre_slots = sequence_slots(a.antecedent);
    std::vector<Slot> post_slots = sequence_slots(a.consequent);

    std::vector<Delay> slots;
    for (const auto& s : pre_slots) slots.push_back(s.delay);
    for (const auto& s : post_slots) slots.push_back(s.delay);

    std::uint64_t product = 1;
    for (const auto& d : slots) {
        product *= d.width();
        if (product > static_cast<std::uint64_t>(cap)) return std::nullopt;
    }

    ExpansionSet set;
    std::vector<std::uint32_t> choice(slots.size(), 0);
    for (std::uint64_t combo = 0; combo < product; ++combo) {
        std::uint64_t idx = combo;
        for (size_t i = 0; i < slots.size(); ++i) {
            choice[i] = slots[i].lo + static_cast<std::uint32_t>(idx % slots[i].width());
            idx /= slots[i].width();
        }

        TimedExpansion exp;
        int offset = 0;
        size_t slot_i = 0;
        for (const auto& s : pre_slots) {
            offset += static_cast<int>(choice[slot_i++]);
            if (offset > kOffsetCap) return std::nullopt;
            add_to_bucket(exp.pre_buckets, offset, s.expr);
        }
        const int antecedent_end = offset;
        offset = antecedent_end;
        for (const auto& s : post_slots) {
            offset += static_cast<int>(choice[slot_i++]);
            if (offset > kOffsetCap) return std::nullopt;
            add_to_bucket(exp.post_buckets, offset, s.expr);
        }
        finish_buckets(exp.pre_buckets);
        finish_buckets(exp.post_buckets);
        int max_off = 0;
        for (const auto& [k, e] : exp.pre_buckets) max_off = std::max(max_off, k);
        for (const auto& [k, e] : exp.post_buckets) max_off = std::max(max_off, k);
        exp.max_offset = max_off;
        set.expansions.push_back(std::move(exp));
    }
    return set;
}

Assertion rebuild(const TimedExpansion& exp, const std::optional<std::string>& clock,
                  const std::string& id) {
    Assertion a;
    a.id = id;
    a.clock = clock;
    a.kind = AssertionKind::Implication;

    int antecedent_end = 0;
    if (exp.pre_buckets.empty()) {
        a.antecedent = Sequence{Delay{}, BoolExpr::make_const(true), {}};
    } else {
        Sequence s;
        int prev = 0;
        bool first = true;
        for (const auto& [off, e] : exp.pre_buckets) {
            if (first) {
                s.lead = Delay{static_cast<std::uint32_t>(off), static_cast<std::uint32_t>(off)};
                s.head = e;
                first = false;
            } else {
                std::uint32_t d = static_cast<std::uint32_t>(off - prev);
                s.tail.emplace_back(Delay{d, d}, e);
            }
            prev = off;
        }
        antecedent_end = prev;
        a.antecedent = std::move(s);
    }

    if (exp.post_buckets.empty()) {
        a.consequent = Sequence{Delay{}, BoolExpr::make_const(true), {}};
    } else {
        Sequence s;
        int prev = antecedent_end;
        bool first = true;
        for (const auto& [off, e] : exp.post_buckets) {
            int gap = off - prev;
            assert(gap >= 0);
            std::uint32_t d = static_cast<std::uint32_t>(std::max(gap, 0));
            if (first) {
                s.lead = Delay{d, d};
                s.head = e;
                first = false;
            } else {
                s.tail.emplace_back(Delay{d, d}, e);
            }
            prev = off;
        }
        a.consequent = std::move(s);
    }
    return a;
}

std::optional<LtlPtr> to_ltl(const Assertion& a, int cap) {
    if (a.kind == AssertionKind::Propositional)
        return LtlFormula::globally(boolexpr_to_ltl(nnf(a.consequent.head)));

    auto set = align(a, cap);
    if (!set) return std::nullopt;

    std::vector<LtlPtr> conjuncts;
    for (const auto& exp : set->expansions) {
        std::vector<LtlPtr> pre_parts, post_parts;
        for (const auto& [off, e] : exp.pre_buckets) pre_parts.push_back(shifted(e, off));
        for (const auto& [off, e] : exp.post_buckets) post_parts.push_back(shifted(e, off));

        LtlPtr post = post_parts.empty() ? LtlFormula::tt()
                                         : LtlFormula::make_and(std::move(post_parts));
        if (pre_parts.empty()) {
            conjuncts.push_back(post);
        } else {
            LtlPtr pre = LtlFormula::make_and(std::move(pre_parts));
            conjuncts.push_back(LtlFormula::make_or({ltl_negate(pre), post}));
        }
    }
    if (conjuncts.empty()) conjuncts.push_back(LtlFormula::tt());
    return LtlFormula::globally(LtlFormula::make_and(std::move(conjuncts)));
}

std::optional<AlignedView> aligned_view(const Assertion& a, int cap) {
    if (a.kind == AssertionKind::Propositional) {
        AlignedView view;
        view.expansions.push_back({BoolExpr::make_const(true), {0}, 0});
        return view;
    }

    std::vector<Slot> pre_slots = sequence_slots(a.antecedent);
    std::vector<Slot> post_slots = sequence_slots(a.consequent);

    std::vector<Delay> slots;
    for (const auto& s : pre_slots) slots.push_back(s.delay);
    for (const auto& s : post_slots) slots.push_back(s.delay);

    std::uint64_t product = 1;
    for (const auto& d : slots) {
        product *= d.width();
        if (product > static_cast<std::uint64_t>(cap)) return std::nullopt;
    }

    AlignedView view;
    for (std::uint64_t combo = 0; combo < product; ++combo) {
        std::uint64_t idx = combo;
        std::vector<std::uint32_t> choice(slots.size());
        for (size_t i = 0; i < slots.size(); ++i) {
            choice[i] = slots[i].lo + static_cast<std::uint32_t>(idx % slots[i].width());
            idx /= slots[i].width();
        }
        AlignedView::Expansion exp;
        std::vector<BoolExprPtr> premise_parts;
        int offset = 0;
        size_t slot_i = 0;
        for (const auto& s : pre_slots) {
            offset += static_cast<int>(choice[slot_i++]);
            if (offset > kOffsetCap) return std::nullopt;
            premise_parts.push_back(timed_expr(s.expr, offset));
        }
        exp.antecedent_end = offset;
        for (const auto& s : post_slots) {
            offset += static_cast<int>(choice[slot_i++]);
            if (offset > kOffsetCap) return std::nullopt;
            exp.post_offsets.push_back(offset);
        }
        exp.premise = premise_parts.empty() ? BoolExpr::make_const(true)
                                            : BoolExpr::make_and(std::move(premise_parts));
        view.expansions.push_back(std::move(exp));
    }
    return view;
}

bool sva_eval_on_lasso(const Assertion& a, const Lasso& lam,
                       const std::vector<std::string>& pool_ap) {
    const size_t n = lam.positions();
    assert(!lam.loop.empty());

    std::unordered_map<std::string, size_t> index;
    index.reserve(pool_ap.size());
    for (size_t i = 0; i < pool_ap.size(); ++i) index.emplace(pool_ap[i], i);
    auto eval_at = [&](const BoolExprPtr& e, size_t pos) {
        return eval(e, [&](const std::string& name) {
            auto it = index.find(name);
            return it != index.end() && lam.letter_at(pos).get(it->second);
        });
    };

    const auto pre_slots = sequence_slots(a.antecedent);
    const auto post_slots = sequence_slots(a.consequent);

    // Reachable positions after a delay range, on the lasso quotient.
    auto step = [&](const std::vector<char>& from, const Delay& d) {
        std::vector<char> to(n, 0);
        for (size_t p = 0; p < n; ++p) {
            if (!from[p]) continue;
            // A walk of prefix+loop steps visits every position it ever can.
            std::uint64_t span = std::min<std::uint64_t>(d.hi - d.lo, n);
            for (std::uint64_t k = 0; k <= span; ++k) to[lam.advance(p, d.lo + k)] = 1;
        }
        return to;
    };

    for (size_t t = 0; t < n; ++t) {
        // Antecedent match ends: every offset combination whose expressions
        // all hold contributes its end position.
        std::vector<char> reach(n, 0);
        reach[t] = 1;
        for (const auto& slot : pre_slots) {
            std::vector<char> moved = step(reach, slot.delay);
            for (size_t p = 0; p < n; ++p)
                if (moved[p] && !eval_at(slot.expr, p)) moved[p] = 0;
            reach = std::move(moved);
        }

        for (size_t e = 0; e < n; ++e) {
            if (!reach[e]) continue;
            // Conjunctive consequent: every expression must hold at every
            // offset its range can place it.
            std::vector<char> obligation(n, 0);
            obligation[e] = 1;
            for (const auto& slot : post_slots) {
                obligation = step(obligation, slot.delay);
                for (size_t p = 0; p < n; ++p)
                    if (obligation[p] && !eval_at(slot.expr, p)) return false;
            }
        }
    }
    return true;
}

}  // namespace arcane
