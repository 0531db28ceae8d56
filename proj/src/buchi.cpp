/* buchi.cpp
 *
 * Copyright (c) 2026 The Arcane Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "arcane/buchi.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

#include "arcane/common.hpp"

namespace arcane {

namespace {

std::atomic<std::uint64_t> g_accept_calls{0};

// ---------------------------------------------------------------------------
// GPVW tableau: nodes carry New (unprocessed), Old (processed), Next
// (obligations for the successor). Formulas are interned so sets are sets of
// small integers.
// ---------------------------------------------------------------------------

struct Interner {
    std::vector<LtlPtr> formulas;
    std::unordered_map<std::string, int> by_key;

    int intern(const LtlPtr& f) {
        std::string key = to_string(f);
        auto it = by_key.find(key);
        if (it != by_key.end()) return it->second;
        int id = static_cast<int>(formulas.size());
        formulas.push_back(f);
        by_key.emplace(std::move(key), id);
        return id;
    }
    const LtlPtr& get(int id) const { return formulas[static_cast<size_t>(id)]; }
};

using IdSet = std::set<int>;

struct GraphNode {
    IdSet old;
    IdSet next;
    std::set<int> incoming;  // -1 marks the virtual init node
};

struct Expander {
    Interner& in;
    std::vector<GraphNode> nodes;
    std::map<std::pair<IdSet, IdSet>, int> by_content;

    // Pending node during expansion.
    struct Pending {
        IdSet news;
        IdSet old;
        IdSet next;
        std::set<int> incoming;
    };

    void expand(Pending nd) {
        if (nd.news.empty()) {
            auto key = std::make_pair(nd.old, nd.next);
            auto it = by_content.find(key);
            if (it != by_content.end()) {
                auto& existing = nodes[static_cast<size_t>(it->second)];
                existing.incoming.insert(nd.incoming.begin(), nd.incoming.end());
                return;
            }
            int id = static_cast<int>(nodes.size());
            nodes.push_back({nd.old, nd.next, nd.incoming});
            by_content.emplace(key, id);
            Pending succ;
            succ.news = nd.next;
            succ.incoming = {id};
            expand(std::move(succ));
            return;
        }

        int fid = *nd.news.begin();
        nd.news.erase(nd.news.begin());
        // Copy: intern() below may reallocate the interner's storage.
        const LtlPtr f = in.get(fid);

        switch (f->op) {
            case LtlOp::False:
                return;  // contradiction, drop node
            case LtlOp::True:
                // Recorded in Old so an Until fulfilled by a constant-true
                // right side is visible to the acceptance sets.
                nd.old.insert(fid);
                expand(std::move(nd));
                return;
            case LtlOp::Atom:
            case LtlOp::NotAtom: {
                // Contradiction with the already-processed literals?
                LtlPtr neg = ltl_negate(f);
                int nid = in.intern(neg);
                if (nd.old.count(nid)) return;
                nd.old.insert(fid);
                expand(std::move(nd));
                return;
            }
            case LtlOp::And: {
                nd.old.insert(fid);
                for (const auto& c : f->children) {
                    int cid = in.intern(c);
                    if (!nd.old.count(cid)) nd.news.insert(cid);
                }
                expand(std::move(nd));
                return;
            }
            case LtlOp::Or: {
                nd.old.insert(fid);
                for (const auto& c : f->children) {
                    Pending copy = nd;
                    int cid = in.intern(c);
                    if (!copy.old.count(cid)) copy.news.insert(cid);
                    expand(std::move(copy));
                }
                return;
            }
            case LtlOp::Next: {
                nd.old.insert(fid);
                nd.next.insert(in.intern(f->children[0]));
                expand(std::move(nd));
                return;
            }
            case LtlOp::Globally: {
                // G p = p && X G p (deterministic expansion)
                nd.old.insert(fid);
                int cid = in.intern(f->children[0]);
                if (!nd.old.count(cid)) nd.news.insert(cid);
                nd.next.insert(fid);
                expand(std::move(nd));
                return;
            }
            case LtlOp::Finally: {
                // F p = p || X F p
                nd.old.insert(fid);
                Pending defer = nd;
                defer.next.insert(fid);
                expand(std::move(defer));
                Pending now = nd;
                int cid = in.intern(f->children[0]);
                if (!now.old.count(cid)) now.news.insert(cid);
                expand(std::move(now));
                return;
            }
            case LtlOp::Until: {
                // p U q = q || (p && X(p U q))
                nd.old.insert(fid);
                Pending defer = nd;
                int pid = in.intern(f->children[0]);
                if (!defer.old.count(pid)) defer.news.insert(pid);
                defer.next.insert(fid);
                expand(std::move(defer));
                Pending now = nd;
                int qid = in.intern(f->children[1]);
                if (!now.old.count(qid)) now.news.insert(qid);
                expand(std::move(now));
                return;
            }
            case LtlOp::Release: {
                // p R q = (q && p) || (q && X(p R q))
                nd.old.insert(fid);
                int pid = in.intern(f->children[0]);
                int qid = in.intern(f->children[1]);
                Pending defer = nd;
                if (!defer.old.count(qid)) defer.news.insert(qid);
                defer.next.insert(fid);
                expand(std::move(defer));
                Pending now = nd;
                if (!now.old.count(qid)) now.news.insert(qid);
                if (!now.old.count(pid)) now.news.insert(pid);
                expand(std::move(now));
                return;
            }
        }
    }
};

BoolExprPtr node_guard(const Interner& in, const IdSet& old) {
    std::vector<BoolExprPtr> lits;
    for (int fid : old) {
        const LtlPtr& f = in.get(fid);
        if (f->op == LtlOp::Atom) lits.push_back(BoolExpr::make_atom(f->atom));
        if (f->op == LtlOp::NotAtom)
            lits.push_back(BoolExpr::make_not(BoolExpr::make_atom(f->atom)));
    }
    if (lits.empty()) return BoolExpr::make_const(true);
    return normalize(BoolExpr::make_and(std::move(lits)));
}

// Collect Until-type subformulas (F is true-U) for the acceptance sets.
void collect_untils(const LtlPtr& f, Interner& in, std::set<int>& out) {
    if (f->op == LtlOp::Until || f->op == LtlOp::Finally) out.insert(in.intern(f));
    for (const auto& c : f->children) collect_untils(c, in, out);
}

}  // namespace

std::optional<BuchiAutomaton> ltl_to_buchi(const LtlPtr& input, int atom_budget) {
    LtlPtr f = ltl_simplify_constants(input);
    std::set<std::string> atoms;
    collect_atoms(f, atoms);
    if (static_cast<int>(atoms.size()) > atom_budget) return std::nullopt;

    Interner in;
    Expander ex{in, {}, {}};
    Expander::Pending init;
    init.news.insert(in.intern(f));
    init.incoming.insert(-1);
    ex.expand(std::move(init));

    std::set<int> untils;
    collect_untils(f, in, untils);
    const std::vector<int> until_list(untils.begin(), untils.end());
    const int k = static_cast<int>(until_list.size());

    const int n = static_cast<int>(ex.nodes.size());
    std::vector<BoolExprPtr> guards;
    guards.reserve(static_cast<size_t>(n));
    for (const auto& nd : ex.nodes) guards.push_back(node_guard(in, nd.old));

    // Generalized acceptance: for each until u = p U q, the states where u is
    // not pending (u not in Old, or q in Old).
    auto in_fset = [&](int node_id, int which) {
        const auto& nd = ex.nodes[static_cast<size_t>(node_id)];
        int u = until_list[static_cast<size_t>(which)];
        if (!nd.old.count(u)) return true;
        const LtlPtr uf = in.get(u);
        const LtlPtr rhs = uf->op == LtlOp::Finally ? uf->children[0] : uf->children[1];
        return nd.old.count(in.intern(rhs)) > 0;
    };

    BuchiAutomaton aut;
    aut.alphabet_atoms.assign(atoms.begin(), atoms.end());

    if (n == 0) {
        // Empty tableau: the formula is unsatisfiable. One non-accepting sink.
        aut.transitions.resize(1);
        aut.transitions[0].push_back({BoolExpr::make_const(true), 0});
        aut.accepting = {false};
        aut.initial = 0;
        return aut;
    }

    // Degeneralize with a counter layer per acceptance set; layer k is the
    // accepting layer and resets to 0. With no untils, every state accepts.
    const int layers = k == 0 ? 1 : k + 1;
    auto state_id = [&](int node, int layer) { return layer * n + node; };

    aut.transitions.assign(static_cast<size_t>(n * layers), {});
    aut.accepting.assign(static_cast<size_t>(n * layers), false);

    // Counter cascades on arrival at the target node; layer k is accepting
    // and restarts the round.
    auto arrival_layer = [&](int dst, int from_layer) {
        int c = from_layer == k ? 0 : from_layer;
        while (c < k && in_fset(dst, c)) ++c;
        return c;
    };

    for (int layer = 0; layer < layers; ++layer) {
        for (int src = 0; src < n; ++src) {
            for (int dst = 0; dst < n; ++dst) {
                if (!ex.nodes[static_cast<size_t>(dst)].incoming.count(src)) continue;
                aut.transitions[static_cast<size_t>(state_id(src, layer))].push_back(
                    {guards[static_cast<size_t>(dst)], state_id(dst, arrival_layer(dst, layer))});
            }
        }
    }
    for (int node = 0; node < n; ++node)
        aut.accepting[static_cast<size_t>(state_id(node, k == 0 ? 0 : k))] = true;

    // GPVW guards label the target node, so the initial state feeds every
    // node with a virtual-init edge, gated by that node's own guard.
    std::vector<BuchiAutomaton::Edge> init_edges;
    for (int node = 0; node < n; ++node) {
        if (!ex.nodes[static_cast<size_t>(node)].incoming.count(-1)) continue;
        init_edges.push_back(
            {guards[static_cast<size_t>(node)], state_id(node, arrival_layer(node, k))});
    }

    // Reuse an existing state whose outgoing edges already match; this keeps
    // the canonical safety automata (G a) at a single state.
    auto edges_equal = [](const std::vector<BuchiAutomaton::Edge>& a,
                          const std::vector<BuchiAutomaton::Edge>& b) {
        if (a.size() != b.size()) return false;
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i].target != b[i].target) return false;
            if (canonical_key(a[i].guard) != canonical_key(b[i].guard)) return false;
        }
        return true;
    };

    int reuse = -1;
    for (int s = 0; s < aut.state_count(); ++s) {
        if (edges_equal(aut.transitions[static_cast<size_t>(s)], init_edges)) {
            reuse = s;
            break;
        }
    }
    if (reuse >= 0) {
        aut.initial = reuse;
    } else {
        aut.initial = aut.state_count();
        aut.transitions.push_back(std::move(init_edges));
        aut.accepting.push_back(false);
    }

    return aut;
}

namespace {

bool guard_holds(const BoolExprPtr& guard, const Letter& letter,
                 const std::vector<std::string>& ap) {
    return eval(guard, [&](const std::string& name) {
        for (size_t i = 0; i < ap.size(); ++i)
            if (ap[i] == name) return letter.get(i);
        return false;
    });
}

}  // namespace

bool accepts(const BuchiAutomaton& aut, const Lasso& lam) {
    g_accept_calls.fetch_add(1, std::memory_order_relaxed);
    assert(!lam.loop.empty());

    const int n = aut.state_count();
    std::vector<char> current(static_cast<size_t>(n), 0);
    current[static_cast<size_t>(aut.initial)] = 1;

    for (const Letter& letter : lam.prefix) {
        std::vector<char> next(static_cast<size_t>(n), 0);
        for (int s = 0; s < n; ++s) {
            if (!current[static_cast<size_t>(s)]) continue;
            for (const auto& e : aut.transitions[static_cast<size_t>(s)])
                if (guard_holds(e.guard, letter, aut.alphabet_atoms))
                    next[static_cast<size_t>(e.target)] = 1;
        }
        current = std::move(next);
    }

    // Product graph over (state, loop position); search for a reachable cycle
    // containing an accepting product node via Tarjan SCCs.
    const int L = static_cast<int>(lam.loop.size());
    auto pid = [&](int s, int i) { return i * n + s; };
    const int pn = n * L;

    std::vector<std::vector<int>> adj(static_cast<size_t>(pn));
    for (int i = 0; i < L; ++i) {
        const Letter& letter = lam.loop[static_cast<size_t>(i)];
        for (int s = 0; s < n; ++s) {
            for (const auto& e : aut.transitions[static_cast<size_t>(s)])
                if (guard_holds(e.guard, letter, aut.alphabet_atoms))
                    adj[static_cast<size_t>(pid(s, i))].push_back(pid(e.target, (i + 1) % L));
        }
    }

    std::vector<char> reachable(static_cast<size_t>(pn), 0);
    std::vector<int> stack;
    for (int s = 0; s < n; ++s) {
        if (current[static_cast<size_t>(s)]) {
            reachable[static_cast<size_t>(pid(s, 0))] = 1;
            stack.push_back(pid(s, 0));
        }
    }
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[static_cast<size_t>(v)]) {
            if (!reachable[static_cast<size_t>(w)]) {
                reachable[static_cast<size_t>(w)] = 1;
                stack.push_back(w);
            }
        }
    }

    // Iterative Tarjan over the reachable sub-graph.
    std::vector<int> index(static_cast<size_t>(pn), -1), low(static_cast<size_t>(pn), 0);
    std::vector<char> on_stack(static_cast<size_t>(pn), 0);
    std::vector<int> scc_stack;
    int counter = 0;
    bool found = false;

    struct Frame {
        int v;
        size_t child;
    };
    for (int root = 0; root < pn && !found; ++root) {
        if (!reachable[static_cast<size_t>(root)] || index[static_cast<size_t>(root)] != -1)
            continue;
        std::vector<Frame> frames{{root, 0}};
        index[static_cast<size_t>(root)] = low[static_cast<size_t>(root)] = counter++;
        scc_stack.push_back(root);
        on_stack[static_cast<size_t>(root)] = 1;
        while (!frames.empty() && !found) {
            Frame& fr = frames.back();
            if (fr.child < adj[static_cast<size_t>(fr.v)].size()) {
                int w = adj[static_cast<size_t>(fr.v)][fr.child++];
                if (!reachable[static_cast<size_t>(w)]) continue;
                if (index[static_cast<size_t>(w)] == -1) {
                    index[static_cast<size_t>(w)] = low[static_cast<size_t>(w)] = counter++;
                    scc_stack.push_back(w);
                    on_stack[static_cast<size_t>(w)] = 1;
                    frames.push_back({w, 0});
                } else if (on_stack[static_cast<size_t>(w)]) {
                    low[static_cast<size_t>(fr.v)] =
                        std::min(low[static_cast<size_t>(fr.v)], index[static_cast<size_t>(w)]);
                }
                continue;
            }
            int v = fr.v;
            frames.pop_back();
            if (!frames.empty())
                low[static_cast<size_t>(frames.back().v)] =
                    std::min(low[static_cast<size_t>(frames.back().v)], low[static_cast<size_t>(v)]);
            if (low[static_cast<size_t>(v)] == index[static_cast<size_t>(v)]) {
                // Pop one SCC; check for a cycle through an accepting state.
                std::vector<int> members;
                for (;;) {
                    int w = scc_stack.back();
                    scc_stack.pop_back();
                    on_stack[static_cast<size_t>(w)] = 0;
                    members.push_back(w);
                    if (w == v) break;
                }
                bool has_accepting = false;
                for (int w : members)
                    if (aut.accepting[static_cast<size_t>(w % n)]) has_accepting = true;
                if (!has_accepting) continue;
                if (members.size() > 1) {
                    found = true;
                } else {
                    int w = members[0];
                    for (int u : adj[static_cast<size_t>(w)])
                        if (u == w) found = true;
                }
            }
        }
    }
    return found;
}

bool eval_on_lasso(const LtlPtr& f, const Lasso& lam, const std::vector<std::string>& pool_ap) {
    const size_t n = lam.positions();
    assert(!lam.loop.empty());

    auto succ = [&](size_t i) { return i + 1 < n ? i + 1 : lam.prefix.size(); };

    std::unordered_map<std::string, size_t> index;
    for (size_t i = 0; i < pool_ap.size(); ++i) index.emplace(pool_ap[i], i);

    // Memoized recursive evaluation keyed by printed subformula.
    std::unordered_map<std::string, std::vector<char>> memo;

    std::function<const std::vector<char>&(const LtlPtr&)> table =
        [&](const LtlPtr& g) -> const std::vector<char>& {
        std::string key = to_string(g);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;

        std::vector<char> vals(n, 0);
        switch (g->op) {
            case LtlOp::True:
                std::fill(vals.begin(), vals.end(), 1);
                break;
            case LtlOp::False:
                break;
            case LtlOp::Atom:
            case LtlOp::NotAtom: {
                auto ap_it = index.find(g->atom);
                for (size_t i = 0; i < n; ++i) {
                    bool v = ap_it != index.end() && lam.letter_at(i).get(ap_it->second);
                    vals[i] = (g->op == LtlOp::Atom) == v;
                }
                break;
            }
            case LtlOp::And:
            case LtlOp::Or: {
                std::fill(vals.begin(), vals.end(), g->op == LtlOp::And ? 1 : 0);
                for (const auto& c : g->children) {
                    const auto& cv = table(c);
                    for (size_t i = 0; i < n; ++i)
                        vals[i] = g->op == LtlOp::And ? (vals[i] && cv[i]) : (vals[i] || cv[i]);
                }
                break;
            }
            case LtlOp::Next: {
                const auto& cv = table(g->children[0]);
                for (size_t i = 0; i < n; ++i) vals[i] = cv[succ(i)];
                break;
            }
            case LtlOp::Globally:
            case LtlOp::Release: {
                // Greatest fixpoint of q && (p || X self); G is the p = false case.
                const auto& rhs = table(g->children[g->op == LtlOp::Globally ? 0 : 1]);
                const std::vector<char>* lhs =
                    g->op == LtlOp::Release ? &table(g->children[0]) : nullptr;
                std::fill(vals.begin(), vals.end(), 1);
                for (bool changed = true; changed;) {
                    changed = false;
                    for (size_t i = 0; i < n; ++i) {
                        char want = rhs[i] && ((lhs && (*lhs)[i]) || vals[succ(i)]);
                        if (vals[i] != want) {
                            vals[i] = want;
                            changed = true;
                        }
                    }
                }
                break;
            }
            case LtlOp::Finally:
            case LtlOp::Until: {
                // Least fixpoint: start from all-false and grow.
                const auto& rhs = table(g->children[g->op == LtlOp::Finally ? 0 : 1]);
                const std::vector<char>* lhs =
                    g->op == LtlOp::Until ? &table(g->children[0]) : nullptr;
                for (bool changed = true; changed;) {
                    changed = false;
                    for (size_t i = 0; i < n; ++i) {
                        char want = rhs[i] || ((!lhs || (*lhs)[i]) && vals[succ(i)]);
                        if (vals[i] != want) {
                            vals[i] = want;
                            changed = true;
                        }
                    }
                }
                break;
            }
        }
        return memo.emplace(std::move(key), std::move(vals)).first->second;
    };

    return table(f)[0] != 0;
}

std::uint64_t AcceptanceVector::accepted_count() const {
    std::uint64_t c = 0;
    for (bool b : bits) c += b;
    return c;
}

AcceptanceVector acceptance_vector(const BuchiAutomaton& aut, const LassoPool& pool) {
    std::vector<int> idx = ap_indices(pool.ap, aut.alphabet_atoms);
    AcceptanceVector v;
    v.pool_hash = pool.content_hash();
    v.bits.reserve(pool.lassos.size());
    for (const auto& lam : pool.lassos) v.bits.push_back(accepts(aut, project(lam, idx)));
    return v;
}

double jaccard(const AcceptanceVector& a, const AcceptanceVector& b) {
    if (a.pool_hash != b.pool_hash || a.bits.size() != b.bits.size())
        throw ContractError("jaccard: acceptance vectors from different lasso pools");
    std::uint64_t inter = 0, uni = 0;
    for (size_t i = 0; i < a.bits.size(); ++i) {
        inter += a.bits[i] && b.bits[i];
        uni += a.bits[i] || b.bits[i];
    }
    if (uni == 0) return 1.0;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

std::uint64_t acceptance_call_count() { return g_accept_calls.load(std::memory_order_relaxed); }
void reset_acceptance_call_count() { g_accept_calls.store(0, std::memory_order_relaxed); }

}  // namespace arcane
