/* rules.cpp
 *
 * Copyright (c) 2026 The Arcane Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "arcane/rules.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <set>

#include "arcane/buchi.hpp"
#include "arcane/common.hpp"
#include "arcane/sat.hpp"
#include "arcane/temporal.hpp"

namespace arcane {

const char* rule_name(RuleId r) {
    switch (r) {
        case RuleId::R1_IntraSimplify:
            return "R1";
        case RuleId::R2_PostConjunction:
            return "R2";
        case RuleId::R3_PreDisjunction:
            return "R3";
        case RuleId::R4_EquivalenceDedup:
            return "R4";
        case RuleId::R5_ImplicationPrune:
            return "R5";
    }
    return "?";
}

namespace {

std::string fresh_id(RuleId r, const Assertion& a) {
    std::string prefix;
    switch (r) {
        case RuleId::R1_IntraSimplify:
            prefix = "r1__";
            break;
        case RuleId::R2_PostConjunction:
            prefix = "r2__";
            break;
        case RuleId::R3_PreDisjunction:
            prefix = "r3__";
            break;
        case RuleId::R4_EquivalenceDedup:
            prefix = "r4__";
            break;
        case RuleId::R5_ImplicationPrune:
            prefix = "r5__";
            break;
    }
    return prefix + hash16(print_assertion(a));
}

std::string clock_key(const Assertion& a) { return a.clock ? *a.clock : std::string(); }

bool consequent_is_false(const Assertion& a) {
    return normalize(a).consequent.head->is_const(false);
}

void finish_outcome(RuleOutcome& out, const std::vector<Assertion>& old_set, AtomMetric metric) {
    out.delta_assertions = static_cast<int>(old_set.size()) - static_cast<int>(out.new_set.size());
    int before = set_atom_count(old_set, metric);
    int after = set_atom_count(out.new_set, metric);
    out.delta_atoms = std::max(0, before - after);
}

std::vector<std::pair<Delay, BoolExprPtr>> items_of(const Sequence& s) {
    std::vector<std::pair<Delay, BoolExprPtr>> items;
    items.emplace_back(s.lead, s.head);
    for (const auto& it : s.tail) items.push_back(it);
    return items;
}

Sequence sequence_from_items(const std::vector<std::pair<Delay, BoolExprPtr>>& items) {
    Sequence s;
    s.lead = items[0].first;
    s.head = items[0].second;
    for (size_t i = 1; i < items.size(); ++i) s.tail.push_back(items[i]);
    return s;
}

// --------------------------------------------------------------------------
// Rule 1
// --------------------------------------------------------------------------

// Returns the simplified assertion, nullopt when the assertion is deleted.
std::optional<Assertion> rule1_one(const Assertion& input, const PipelineConfig& cfg,
                                   bool& falsum) {
    falsum = false;

    if (input.kind == AssertionKind::Propositional) {
        Assertion a = input;
        BoolExprPtr e = simplify_absorb(a.consequent.head);
        if (!expr_sat(e)) {
            e = BoolExpr::make_const(false);
        } else if (!expr_sat(BoolExpr::make_not(e))) {
            return std::nullopt;  // tautology, no constraint
        }
        falsum = e->is_const(false);
        a.consequent = Sequence{Delay{}, e, {}};
        return a;
    }

    // Boolean cleanup of every item (equivalence-preserving identities).
    Assertion a = input;
    auto clean_seq = [](Sequence& s) {
        s.head = simplify_absorb(s.head);
        for (auto& [d, e] : s.tail) e = simplify_absorb(e);
    };
    clean_seq(a.antecedent);
    clean_seq(a.consequent);

    auto view = aligned_view(a);
    if (!view) return a;  // reduction-opaque: leave untouched

    auto post_items = items_of(a.consequent);

    // Per-expansion consequent formula at the current item set.
    auto post_formula = [&](const AlignedView::Expansion& exp) {
        std::vector<BoolExprPtr> parts;
        for (size_t j = 0; j < post_items.size(); ++j)
            parts.push_back(timed_expr(post_items[j].second, exp.post_offsets[j]));
        return parts.empty() ? BoolExpr::make_const(true) : BoolExpr::make_and(std::move(parts));
    };

    // Tautology (covers reflexive removal, vacuous implication, inconsistent
    // antecedent): every expansion's premise entails its consequent.
    bool tautology = true;
    for (const auto& exp : view->expansions) {
        CnfFormula f;
        std::set<std::string> names;
        collect_atoms(exp.premise, names);
        BoolExprPtr post = post_formula(exp);
        collect_atoms(post, names);
        if (static_cast<int>(names.size()) > kVarBudget) {
            tautology = false;
            break;
        }
        add_assertion(f, exp.premise);
        add_assertion(f, BoolExpr::make_not(post));
        if (is_sat(f)) {
            tautology = false;
            break;
        }
    }
    if (tautology) return std::nullopt;

    // Polarity conflict: the consequent can never hold when triggered; the
    // whole consequent collapses to 0 (the assertion is kept as a detector).
    bool conflict = true;
    bool premise_possible = false;
    for (const auto& exp : view->expansions) {
        if (!expr_sat(exp.premise)) continue;
        premise_possible = true;
        CnfFormula f;
        std::set<std::string> names;
        BoolExprPtr post = post_formula(exp);
        collect_atoms(exp.premise, names);
        collect_atoms(post, names);
        if (static_cast<int>(names.size()) > kVarBudget) {
            conflict = false;
            break;
        }
        add_assertion(f, exp.premise);
        add_assertion(f, post);
        if (is_sat(f)) {
            conflict = false;
            break;
        }
    }
    if (conflict && premise_possible) {
        a.consequent = Sequence{Delay{}, BoolExpr::make_const(false), {}};
        falsum = true;
        return a;
    }

    // Entailment pruning, bucket-level: drop any consequent conjunct implied
    // by the premise in every expansion.
    for (size_t j = 0; j < post_items.size(); ++j) {
        BoolExprPtr expr = normalize(post_items[j].second);
        std::vector<BoolExprPtr> units =
            expr->op == BoolOp::And ? expr->children : std::vector<BoolExprPtr>{expr};
        std::vector<BoolExprPtr> kept;
        for (const auto& unit : units) {
            bool entailed_everywhere = true;
            for (const auto& exp : view->expansions) {
                auto res = entails_expr(exp.premise, unit, exp.post_offsets[j]);
                if (!res || !*res) {
                    entailed_everywhere = false;
                    break;
                }
            }
            if (!entailed_everywhere) kept.push_back(unit);
        }
        if (kept.size() == units.size()) continue;
        post_items[j].second =
            kept.empty() ? BoolExpr::make_const(true) : normalize(BoolExpr::make_and(kept));
    }
    a.consequent = sequence_from_items(post_items);

    falsum = consequent_is_false(a);
    (void)cfg;
    return a;
}

}  // namespace

RuleOutcome apply_rule1(const std::vector<Assertion>& s, const PipelineConfig& cfg) {
    RuleOutcome out;
    for (const auto& a : s) {
        bool falsum = false;
        auto result = rule1_one(a, cfg, falsum);
        if (!result) {
            out.removed.push_back(a.id);
            continue;
        }
        if (print_assertion(*result) == print_assertion(a)) {
            if (falsum) out.falsum_flagged.push_back(a.id);
            out.new_set.push_back(a);
            continue;
        }
        result->id = fresh_id(RuleId::R1_IntraSimplify, *result);
        out.rewritten.emplace_back(a.id, result->id);
        if (falsum) out.falsum_flagged.push_back(result->id);
        out.new_set.push_back(std::move(*result));
    }
    finish_outcome(out, s, cfg.atom_metric);
    return out;
}

namespace {

bool fixed_delays(const Sequence& s) {
    if (!s.lead.fixed()) return false;
    for (const auto& [d, e] : s.tail)
        if (!d.fixed()) return false;
    return true;
}

}  // namespace

RuleOutcome apply_rule2(const std::vector<Assertion>& s, const PipelineConfig& cfg) {
    RuleOutcome out;
    // Group by (clock, canonical antecedent key); implication kind only.
    std::map<std::string, std::vector<size_t>> groups;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i].kind != AssertionKind::Implication) continue;
        groups[clock_key(s[i]) + "\x1f" + canonical_key(s[i].antecedent)].push_back(i);
    }

    std::map<size_t, Assertion> replacement;  // first-member index -> merged
    std::set<size_t> dropped;

    for (auto& [key, members] : groups) {
        std::vector<size_t> mergeable;
        for (size_t i : members)
            if (fixed_delays(s[i].consequent)) mergeable.push_back(i);
        if (mergeable.size() < 2) continue;

        // Consequent buckets relative to the antecedent end; offsets are
        // plain sums because delays are fixed.
        std::map<int, BoolExprPtr> buckets;
        for (size_t i : mergeable) {
            const Sequence& c = normalize(s[i]).consequent;
            int off = static_cast<int>(c.lead.lo);
            auto put = [&](int o, const BoolExprPtr& e) {
                auto it = buckets.find(o);
                if (it == buckets.end())
                    buckets[o] = e;
                else
                    it->second = normalize(BoolExpr::make_and({it->second, e}));
            };
            put(off, c.head);
            for (const auto& [d, e] : c.tail) {
                off += static_cast<int>(d.lo);
                put(off, e);
            }
        }

        Assertion merged;
        merged.kind = AssertionKind::Implication;
        merged.clock = s[mergeable[0]].clock;
        merged.antecedent = normalize(s[mergeable[0]]).antecedent;
        std::vector<std::pair<Delay, BoolExprPtr>> items;
        int prev = 0;
        bool first = true;
        for (const auto& [off, e] : buckets) {
            std::uint32_t gap = static_cast<std::uint32_t>(off - (first ? 0 : prev));
            items.emplace_back(Delay{gap, gap}, e);
            prev = off;
            first = false;
        }
        merged.consequent = sequence_from_items(items);
        merged.id = fresh_id(RuleId::R2_PostConjunction, merged);

        std::vector<std::string> merged_ids;
        for (size_t i : mergeable) merged_ids.push_back(s[i].id);
        out.merged.emplace_back(std::move(merged_ids), merged.id);
        replacement[mergeable[0]] = std::move(merged);
        for (size_t k = 1; k < mergeable.size(); ++k) dropped.insert(mergeable[k]);
    }

    for (size_t i = 0; i < s.size(); ++i) {
        if (dropped.count(i)) continue;
        auto it = replacement.find(i);
        out.new_set.push_back(it == replacement.end() ? s[i] : it->second);
    }
    finish_outcome(out, s, cfg.atom_metric);
    return out;
}

namespace {

// Antecedent merge for Rule 3: either the delay skeletons match and the
// expressions differ in at most one position (OR those), or everything
// matches except one delay slot whose ranges overlap or are adjacent.
std::optional<Sequence> merge_antecedents(const Sequence& x, const Sequence& y) {
    auto xi = items_of(x);
    auto yi = items_of(y);
    if (xi.size() != yi.size()) return std::nullopt;

    bool delays_equal = true;
    int delay_diff = -1;
    for (size_t k = 0; k < xi.size(); ++k) {
        if (!(xi[k].first == yi[k].first)) {
            delays_equal = false;
            if (delay_diff >= 0) return std::nullopt;  // two differing slots
            delay_diff = static_cast<int>(k);
        }
    }

    int expr_diff = -1;
    bool exprs_equal = true;
    for (size_t k = 0; k < xi.size(); ++k) {
        if (canonical_key(xi[k].second) != canonical_key(yi[k].second)) {
            exprs_equal = false;
            if (expr_diff >= 0) return std::nullopt;
            expr_diff = static_cast<int>(k);
        }
    }

    if (delays_equal && exprs_equal) {
        // Structurally identical antecedents; the merge is a dedup.
        return sequence_from_items(xi);
    }
    if (delays_equal && expr_diff >= 0) {
        auto merged = xi;
        merged[static_cast<size_t>(expr_diff)].second = normalize(BoolExpr::make_or(
            {xi[static_cast<size_t>(expr_diff)].second, yi[static_cast<size_t>(expr_diff)].second}));
        return sequence_from_items(merged);
    }
    if (!delays_equal && exprs_equal) {
        Delay a = xi[static_cast<size_t>(delay_diff)].first;
        Delay b = yi[static_cast<size_t>(delay_diff)].first;
        if (a.lo > b.lo) std::swap(a, b);
        if (b.lo > a.hi + 1) return std::nullopt;  // disjoint, non-adjacent
        auto merged = xi;
        merged[static_cast<size_t>(delay_diff)].first = Delay{a.lo, std::max(a.hi, b.hi)};
        return sequence_from_items(merged);
    }
    return std::nullopt;
}

}  // namespace

RuleOutcome apply_rule3(const std::vector<Assertion>& s, const PipelineConfig& cfg) {
    RuleOutcome out;
    std::map<std::string, std::vector<size_t>> groups;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i].kind != AssertionKind::Implication) continue;
        groups[clock_key(s[i]) + "\x1f" + canonical_key(s[i].consequent, false)].push_back(i);
    }

    struct Member {
        Sequence antecedent;
        std::vector<std::string> sources;
        size_t position;  // original index of the first source
    };

    std::map<size_t, Assertion> replacement;
    std::set<size_t> dropped;

    for (auto& [key, indices] : groups) {
        if (indices.size() < 2) continue;
        std::vector<Member> members;
        for (size_t i : indices)
            members.push_back({normalize(s[i]).antecedent, {s[i].id}, i});

        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t i = 0; i < members.size() && !changed; ++i) {
                for (size_t j = i + 1; j < members.size() && !changed; ++j) {
                    auto merged = merge_antecedents(members[i].antecedent, members[j].antecedent);
                    if (!merged) continue;
                    members[i].antecedent = std::move(*merged);
                    members[i].sources.insert(members[i].sources.end(),
                                              members[j].sources.begin(),
                                              members[j].sources.end());
                    members.erase(members.begin() + static_cast<std::ptrdiff_t>(j));
                    changed = true;
                }
            }
        }

        for (const auto& m : members) {
            if (m.sources.size() < 2) continue;
            Assertion merged;
            merged.kind = AssertionKind::Implication;
            merged.clock = s[m.position].clock;
            merged.antecedent = m.antecedent;
            merged.consequent = normalize(s[m.position]).consequent;
            merged.id = fresh_id(RuleId::R3_PreDisjunction, merged);
            out.merged.emplace_back(m.sources, merged.id);
            replacement[m.position] = std::move(merged);
            for (size_t i : indices) {
                if (i == m.position) continue;
                for (const auto& src : m.sources)
                    if (s[i].id == src) dropped.insert(i);
            }
        }
    }

    for (size_t i = 0; i < s.size(); ++i) {
        if (dropped.count(i)) continue;
        auto it = replacement.find(i);
        out.new_set.push_back(it == replacement.end() ? s[i] : it->second);
    }
    finish_outcome(out, s, cfg.atom_metric);
    return out;
}

namespace {

std::optional<ExpansionSet> align_cached(const Assertion& a,
                                         std::map<std::string, std::optional<ExpansionSet>>& cache) {
    auto it = cache.find(a.id);
    if (it != cache.end()) return it->second;
    auto set = align(a);
    cache[a.id] = set;
    return set;
}

// Bounded refutation for pairs that cannot be aligned: any disagreement on a
// shared lasso proves non-equivalence; agreement proves nothing.
bool lasso_refutes(const Assertion& a, const Assertion& b, int samples, std::uint64_t seed) {
    std::set<std::string> atoms = atomic_propositions(a);
    auto batoms = atomic_propositions(b);
    atoms.insert(batoms.begin(), batoms.end());
    std::vector<std::string> ap(atoms.begin(), atoms.end());
    std::uint64_t pool_seed = seed;
    for (const auto& name : ap) pool_seed = hash_combine(pool_seed, fnv1a64(name));
    LassoPool pool = sample_lassos(ap, samples, pool_seed);
    for (const auto& lam : pool.lassos) {
        if (sva_eval_on_lasso(a, lam, pool.ap) != sva_eval_on_lasso(b, lam, pool.ap)) return true;
    }
    return false;
}

}  // namespace

RuleOutcome apply_rule4(const std::vector<Assertion>& s, const PipelineConfig& cfg) {
    RuleOutcome out;
    const size_t n = s.size();
    std::vector<size_t> parent(n);
    for (size_t i = 0; i < n; ++i) parent[i] = i;
    std::function<size_t(size_t)> find = [&](size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };

    std::map<std::string, std::optional<ExpansionSet>> cache;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            if (clock_key(s[i]) != clock_key(s[j])) continue;
            if (find(i) == find(j)) continue;
            bool equal = false;
            if (equivalent_printed(s[i], s[j])) {
                equal = true;
            } else {
                auto ei = align_cached(s[i], cache);
                auto ej = align_cached(s[j], cache);
                if (ei && ej) {
                    auto res = equivalent(*ei, *ej);
                    equal = res.value_or(false);
                } else {
                    // Opaque pair: refutation only; never a merge licence.
                    (void)lasso_refutes(s[i], s[j], cfg.certify_samples,
                                        hash_combine(cfg.seed, 0x72346c61ull));
                }
            }
            if (equal) parent[std::max(find(i), find(j))] = std::min(find(i), find(j));
        }
    }

    std::map<size_t, std::vector<size_t>> classes;
    for (size_t i = 0; i < n; ++i) classes[find(i)].push_back(i);

    std::set<size_t> removed_idx;
    for (auto& [root, members] : classes) {
        if (members.size() < 2) continue;
        size_t best = members[0];
        for (size_t m : members) {
            int ma = atom_occurrences(s[m]), ba = atom_occurrences(s[best]);
            if (ma < ba || (ma == ba && s[m].id < s[best].id)) best = m;
        }
        std::vector<std::string> ids;
        for (size_t m : members) {
            ids.push_back(s[m].id);
            if (m != best) {
                removed_idx.insert(m);
                out.removed.push_back(s[m].id);
            }
        }
        out.merged.emplace_back(std::move(ids), s[best].id);
    }

    for (size_t i = 0; i < n; ++i)
        if (!removed_idx.count(i)) out.new_set.push_back(s[i]);
    finish_outcome(out, s, cfg.atom_metric);
    return out;
}

RuleOutcome apply_rule5(const std::vector<Assertion>& s, const PipelineConfig& cfg) {
    RuleOutcome out;
    const size_t n = s.size();

    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return s[a].id < s[b].id; });

    std::map<std::string, std::optional<ExpansionSet>> cache;
    std::vector<bool> removed(n, false), protected_(n, false);

    auto strict_implies = [&](size_t a, size_t b) -> bool {
        auto ea = align_cached(s[a], cache);
        auto eb = align_cached(s[b], cache);
        if (!ea || !eb) return false;
        auto fwd = implies(*ea, *eb);
        if (!fwd || !*fwd) return false;
        auto bwd = implies(*eb, *ea);
        if (!bwd) return false;
        return !*bwd;
    };

    for (size_t oi = 0; oi < n; ++oi) {
        for (size_t oj = oi + 1; oj < n; ++oj) {
            size_t i = order[oi], j = order[oj];
            if (removed[i] || removed[j]) continue;
            if (clock_key(s[i]) != clock_key(s[j])) continue;
            if (strict_implies(i, j)) {
                if (!protected_[j] && !consequent_is_false(s[j])) {
                    removed[j] = true;
                    protected_[i] = true;
                    out.removed.push_back(s[j].id);
                }
            } else if (strict_implies(j, i)) {
                if (!protected_[i] && !consequent_is_false(s[i])) {
                    removed[i] = true;
                    protected_[j] = true;
                    out.removed.push_back(s[i].id);
                }
            }
        }
    }

    for (size_t i = 0; i < n; ++i) {
        if (removed[i]) continue;
        if (consequent_is_false(s[i])) out.falsum_flagged.push_back(s[i].id);
        out.new_set.push_back(s[i]);
    }
    finish_outcome(out, s, cfg.atom_metric);
    return out;
}

RuleOutcome apply_rule(RuleId r, const std::vector<Assertion>& s, const PipelineConfig& cfg) {
    switch (r) {
        case RuleId::R1_IntraSimplify:
            return apply_rule1(s, cfg);
        case RuleId::R2_PostConjunction:
            return apply_rule2(s, cfg);
        case RuleId::R3_PreDisjunction:
            return apply_rule3(s, cfg);
        case RuleId::R4_EquivalenceDedup:
            return apply_rule4(s, cfg);
        case RuleId::R5_ImplicationPrune:
            return apply_rule5(s, cfg);
    }
    return apply_rule1(s, cfg);
}

int set_atom_count(const std::vector<Assertion>& s, AtomMetric metric) {
    if (metric == AtomMetric::Occurrences) {
        int total = 0;
        for (const auto& a : s) total += atom_occurrences(a);
        return total;
    }
    std::set<std::string> distinct;
    for (const auto& a : s) {
        auto atoms = atomic_propositions(a);
        distinct.insert(atoms.begin(), atoms.end());
    }
    return static_cast<int>(distinct.size());
}

Certificate certify(const std::vector<Assertion>& old_set,
                    const std::vector<Assertion>& new_set, int samples, std::uint64_t seed) {
    Certificate cert;
    cert.samples = samples;

    std::set<std::string> atoms;
    for (const auto* set : {&old_set, &new_set}) {
        for (const auto& a : *set) {
            auto ap = atomic_propositions(a);
            atoms.insert(ap.begin(), ap.end());
        }
    }
    std::vector<std::string> ap(atoms.begin(), atoms.end());
    std::uint64_t pool_seed = seed;
    for (const auto& name : ap) pool_seed = hash_combine(pool_seed, fnv1a64(name));
    LassoPool pool = sample_lassos(ap, samples, pool_seed);

    // Alignable members go through the LTL route; opaque ones through the
    // direct cycle-wise evaluator.
    struct Member {
        std::optional<LtlPtr> formula;
        const Assertion* a;
    };
    auto prepare = [&](const std::vector<Assertion>& set) {
        std::vector<Member> ms;
        ms.reserve(set.size());
        for (const auto& a : set) ms.push_back({to_ltl(a), &a});
        return ms;
    };
    std::vector<Member> old_members = prepare(old_set);
    std::vector<Member> new_members = prepare(new_set);

    auto conj_eval = [&](const std::vector<Member>& ms, const Lasso& lam) {
        for (const auto& m : ms) {
            bool v = m.formula ? eval_on_lasso(*m.formula, lam, pool.ap)
                               : sva_eval_on_lasso(*m.a, lam, pool.ap);
            if (!v) return false;
        }
        return true;
    };

    for (const auto& lam : pool.lassos) {
        if (conj_eval(old_members, lam) != conj_eval(new_members, lam)) {
            ++cert.failures;
            if (cert.counterexample.empty()) {
                std::string s = "prefix[";
                for (const auto& l : lam.prefix)
                    for (size_t b = 0; b < pool.ap.size(); ++b) s += l.get(b) ? '1' : '0';
                s += "] loop[";
                for (const auto& l : lam.loop)
                    for (size_t b = 0; b < pool.ap.size(); ++b) s += l.get(b) ? '1' : '0';
                s += "]";
                cert.counterexample = s;
            }
        }
    }
    cert.ok = cert.failures == 0;
    return cert;
}

}  // namespace arcane
