/* assertion.cpp
 *
 * Copyright (c) 2026 The Arcane Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "arcane/assertion.hpp"

#include "arcane/common.hpp"

namespace arcane {

namespace {

std::string delay_str(const Delay& d) {
    if (d.fixed()) return std::to_string(d.lo);
    return "[" + std::to_string(d.lo) + ":" + std::to_string(d.hi) + "]";
}

// Items as (delay from previous item, expr); the first delta is the lead.
std::vector<std::pair<Delay, BoolExprPtr>> item_list(const Sequence& s) {
    std::vector<std::pair<Delay, BoolExprPtr>> items;
    items.emplace_back(s.lead, s.head);
    for (const auto& [d, e] : s.tail) items.emplace_back(d, e);
    return items;
}

Sequence from_item_list(std::vector<std::pair<Delay, BoolExprPtr>> items) {
    Sequence s;
    s.lead = items[0].first;
    s.head = items[0].second;
    for (size_t i = 1; i < items.size(); ++i) s.tail.push_back(items[i]);
    return s;
}

// Constant-true items are vacuous; drop them and fold their delay into the
// following item. The last item of an antecedent anchors the end offset and
// is never dropped.
Sequence normalize_sequence(const Sequence& s, bool anchor_last) {
    auto items = item_list(s);
    for (auto& [d, e] : items) e = normalize(e);

    std::vector<std::pair<Delay, BoolExprPtr>> kept;
    Delay carry{};
    for (size_t i = 0; i < items.size(); ++i) {
        Delay d{items[i].first.lo + carry.lo, items[i].first.hi + carry.hi};
        const BoolExprPtr& e = items[i].second;
        const bool last = i + 1 == items.size();
        if (e->is_const(true) && !(last && anchor_last)) {
            carry = d;
            continue;
        }
        carry = Delay{};
        kept.emplace_back(d, e);
    }
    if (kept.empty()) kept.emplace_back(Delay{}, BoolExpr::make_const(true));
    return from_item_list(std::move(kept));
}

std::string sequence_str(const Sequence& s) {
    const bool multi = s.item_count() > 1 || !(s.lead == Delay{});
    std::string out;
    if (!(s.lead == Delay{})) out += "##" + delay_str(s.lead) + " ";
    auto piece = [&](const BoolExprPtr& e) {
        const bool parens = multi && (e->op == BoolOp::And || e->op == BoolOp::Or);
        return parens ? "(" + to_string(e) + ")" : to_string(e);
    };
    out += piece(s.head);
    for (const auto& [d, e] : s.tail) out += " ##" + delay_str(d) + " " + piece(e);
    return out;
}

}  // namespace

Assertion normalize(const Assertion& a) {
    Assertion n = a;
    if (a.kind == AssertionKind::Propositional) {
        n.antecedent = Sequence{Delay{}, BoolExpr::make_const(true), {}};
        n.consequent = Sequence{Delay{}, normalize(a.consequent.head), {}};
        return n;
    }
    n.antecedent = normalize_sequence(a.antecedent, /*anchor_last=*/true);
    n.consequent = normalize_sequence(a.consequent, /*anchor_last=*/false);
    return n;
}

std::string print_assertion_body(const Assertion& a) {
    Assertion n = normalize(a);
    if (n.kind == AssertionKind::Propositional) return to_string(n.consequent.head);
    return sequence_str(n.antecedent) + " |-> " + sequence_str(n.consequent);
}

std::string print_assertion(const Assertion& a) {
    std::string out;
    if (a.clock) out += "@(posedge " + *a.clock + ") ";
    return out + print_assertion_body(a);
}

std::set<std::string> atomic_propositions(const Assertion& a) {
    Assertion n = normalize(a);
    std::set<std::string> atoms;
    for (const Sequence* s : {&n.antecedent, &n.consequent}) {
        collect_atoms(s->head, atoms);
        for (const auto& [d, e] : s->tail) collect_atoms(e, atoms);
    }
    return atoms;
}

int atom_occurrences(const Assertion& a) {
    Assertion n = normalize(a);
    int count = 0;
    for (const Sequence* s : {&n.antecedent, &n.consequent}) {
        count += atom_occurrences(s->head);
        for (const auto& [d, e] : s->tail) count += atom_occurrences(e);
    }
    return count;
}

bool equivalent_printed(const Assertion& a, const Assertion& b) {
    return print_assertion(a) == print_assertion(b);
}

std::uint64_t content_hash(const Assertion& a) { return fnv1a64(print_assertion(a)); }

std::string canonical_key(const Sequence& s, bool anchor_last) {
    Sequence n = normalize_sequence(s, anchor_last);
    std::string key = "##" + delay_str(n.lead) + ":" + canonical_key(n.head);
    for (const auto& [d, e] : n.tail) key += "|##" + delay_str(d) + ":" + canonical_key(e);
    return key;
}

}  // namespace arcane
