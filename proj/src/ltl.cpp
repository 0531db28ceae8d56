/* ltl.cpp
 *
 * Copyright (c) 2026 The Arcane Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "arcane/ltl.hpp"

#include <cassert>

namespace arcane {

namespace {
LtlPtr node(LtlOp op, std::string atom = {}, std::vector<LtlPtr> cs = {}) {
    auto f = std::make_shared<LtlFormula>();
    f->op = op;
    f->atom = std::move(atom);
    f->children = std::move(cs);
    return f;
}
}  // namespace

LtlPtr LtlFormula::tt() { return node(LtlOp::True); }
LtlPtr LtlFormula::ff() { return node(LtlOp::False); }
LtlPtr LtlFormula::make_atom(std::string name) { return node(LtlOp::Atom, std::move(name)); }
LtlPtr LtlFormula::not_atom(std::string name) { return node(LtlOp::NotAtom, std::move(name)); }

LtlPtr LtlFormula::make_and(std::vector<LtlPtr> cs) {
    assert(!cs.empty());
    if (cs.size() == 1) return cs[0];
    return node(LtlOp::And, {}, std::move(cs));
}

LtlPtr LtlFormula::make_or(std::vector<LtlPtr> cs) {
    assert(!cs.empty());
    if (cs.size() == 1) return cs[0];
    return node(LtlOp::Or, {}, std::move(cs));
}

LtlPtr LtlFormula::next(LtlPtr c) { return node(LtlOp::Next, {}, {std::move(c)}); }
LtlPtr LtlFormula::globally(LtlPtr c) { return node(LtlOp::Globally, {}, {std::move(c)}); }
LtlPtr LtlFormula::finally(LtlPtr c) { return node(LtlOp::Finally, {}, {std::move(c)}); }

LtlPtr LtlFormula::until(LtlPtr l, LtlPtr r) {
    return node(LtlOp::Until, {}, {std::move(l), std::move(r)});
}

LtlPtr LtlFormula::release(LtlPtr l, LtlPtr r) {
    return node(LtlOp::Release, {}, {std::move(l), std::move(r)});
}

LtlPtr ltl_negate(const LtlPtr& f) {
    switch (f->op) {
        case LtlOp::True:
            return LtlFormula::ff();
        case LtlOp::False:
            return LtlFormula::tt();
        case LtlOp::Atom:
            return LtlFormula::not_atom(f->atom);
        case LtlOp::NotAtom:
            return LtlFormula::make_atom(f->atom);
        case LtlOp::And:
        case LtlOp::Or: {
            std::vector<LtlPtr> cs;
            cs.reserve(f->children.size());
            for (const auto& c : f->children) cs.push_back(ltl_negate(c));
            return f->op == LtlOp::And ? LtlFormula::make_or(std::move(cs))
                                       : LtlFormula::make_and(std::move(cs));
        }
        case LtlOp::Next:
            return LtlFormula::next(ltl_negate(f->children[0]));
        case LtlOp::Globally:
            return LtlFormula::finally(ltl_negate(f->children[0]));
        case LtlOp::Finally:
            return LtlFormula::globally(ltl_negate(f->children[0]));
        case LtlOp::Until:
            return LtlFormula::release(ltl_negate(f->children[0]), ltl_negate(f->children[1]));
        case LtlOp::Release:
            return LtlFormula::until(ltl_negate(f->children[0]), ltl_negate(f->children[1]));
    }
    return f;
}

LtlPtr ltl_simplify_constants(const LtlPtr& f) {
    auto is_true = [](const LtlPtr& g) { return g->op == LtlOp::True; };
    auto is_false = [](const LtlPtr& g) { return g->op == LtlOp::False; };
    switch (f->op) {
        case LtlOp::True:
        case LtlOp::False:
        case LtlOp::Atom:
        case LtlOp::NotAtom:
            return f;
        case LtlOp::And:
        case LtlOp::Or: {
            const bool conj = f->op == LtlOp::And;
            std::vector<LtlPtr> kept;
            for (const auto& c : f->children) {
                LtlPtr s = ltl_simplify_constants(c);
                if (conj ? is_true(s) : is_false(s)) continue;
                if (conj ? is_false(s) : is_true(s))
                    return conj ? LtlFormula::ff() : LtlFormula::tt();
                kept.push_back(std::move(s));
            }
            if (kept.empty()) return conj ? LtlFormula::tt() : LtlFormula::ff();
            return conj ? LtlFormula::make_and(std::move(kept))
                        : LtlFormula::make_or(std::move(kept));
        }
        case LtlOp::Next: {
            LtlPtr c = ltl_simplify_constants(f->children[0]);
            if (is_true(c) || is_false(c)) return c;
            return LtlFormula::next(std::move(c));
        }
        case LtlOp::Globally: {
            LtlPtr c = ltl_simplify_constants(f->children[0]);
            if (is_true(c) || is_false(c)) return c;
            return LtlFormula::globally(std::move(c));
        }
        case LtlOp::Finally: {
            LtlPtr c = ltl_simplify_constants(f->children[0]);
            if (is_true(c) || is_false(c)) return c;
            return LtlFormula::finally(std::move(c));
        }
        case LtlOp::Until: {
            LtlPtr l = ltl_simplify_constants(f->children[0]);
            LtlPtr r = ltl_simplify_constants(f->children[1]);
            if (is_true(r) || is_false(r)) return r;
            if (is_false(l)) return r;
            if (is_true(l)) return LtlFormula::finally(std::move(r));
            return LtlFormula::until(std::move(l), std::move(r));
        }
        case LtlOp::Release: {
            LtlPtr l = ltl_simplify_constants(f->children[0]);
            LtlPtr r = ltl_simplify_constants(f->children[1]);
            if (is_true(r) || is_false(r)) return r;
            if (is_true(l)) return r;
            if (is_false(l)) return LtlFormula::globally(std::move(r));
            return LtlFormula::release(std::move(l), std::move(r));
        }
    }
    return f;
}

std::string to_string(const LtlPtr& f) {
    switch (f->op) {
        case LtlOp::True:
            return "true";
        case LtlOp::False:
            return "false";
        case LtlOp::Atom:
            return f->atom;
        case LtlOp::NotAtom:
            return "!" + f->atom;
        case LtlOp::And:
        case LtlOp::Or: {
            std::string out = "(";
            const char* sep = f->op == LtlOp::And ? " & " : " | ";
            for (size_t i = 0; i < f->children.size(); ++i) {
                if (i) out += sep;
                out += to_string(f->children[i]);
            }
            return out + ")";
        }
        case LtlOp::Next:
            return "X(" + to_string(f->children[0]) + ")";
        case LtlOp::Globally:
            return "G(" + to_string(f->children[0]) + ")";
        case LtlOp::Finally:
            return "F(" + to_string(f->children[0]) + ")";
        case LtlOp::Until:
            return "(" + to_string(f->children[0]) + " U " + to_string(f->children[1]) + ")";
        case LtlOp::Release:
            return "(" + to_string(f->children[0]) + " R " + to_string(f->children[1]) + ")";
    }
    return {};
}

void collect_atoms(const LtlPtr& f, std::set<std::string>& out) {
    if (f->op == LtlOp::Atom || f->op == LtlOp::NotAtom) {
        out.insert(f->atom);
        return;
    }
    for (const auto& c : f->children) collect_atoms(c, out);
}

std::vector<std::string> ltl_atoms(const LtlPtr& f) {
    std::set<std::string> s;
    collect_atoms(f, s);
    return {s.begin(), s.end()};
}

}  // namespace arcane
