/* bool_expr.cpp
 *
 * Copyright (c) 2026 The Arcane Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "arcane/bool_expr.hpp"

#include <algorithm>
#include <cassert>

#include "arcane/common.hpp"

namespace arcane {

BoolExprPtr BoolExpr::make_atom(std::string name) {
    auto e = std::make_shared<BoolExpr>();
    e->op = BoolOp::Atom;
    e->atom = std::move(name);
    return e;
}

BoolExprPtr BoolExpr::make_const(bool v) {
    auto e = std::make_shared<BoolExpr>();
    e->op = BoolOp::Const;
    e->value = v;
    return e;
}

BoolExprPtr BoolExpr::make_not(BoolExprPtr c) {
    auto e = std::make_shared<BoolExpr>();
    e->op = BoolOp::Not;
    e->children.push_back(std::move(c));
    return e;
}

BoolExprPtr BoolExpr::make_and(std::vector<BoolExprPtr> cs) {
    assert(!cs.empty());
    if (cs.size() == 1) return cs[0];
    auto e = std::make_shared<BoolExpr>();
    e->op = BoolOp::And;
    e->children = std::move(cs);
    return e;
}

BoolExprPtr BoolExpr::make_or(std::vector<BoolExprPtr> cs) {
    assert(!cs.empty());
    if (cs.size() == 1) return cs[0];
    auto e = std::make_shared<BoolExpr>();
    e->op = BoolOp::Or;
    e->children = std::move(cs);
    return e;
}

static void serialize_into(const BoolExprPtr& e, std::string& out) {
    switch (e->op) {
        case BoolOp::Atom:
            out += e->atom;
            break;
        case BoolOp::Const:
            out += e->value ? '1' : '0';
            break;
        case BoolOp::Not:
            out += "(! ";
            serialize_into(e->children[0], out);
            out += ')';
            break;
        case BoolOp::And:
        case BoolOp::Or:
            out += e->op == BoolOp::And ? "(& " : "(| ";
            for (size_t i = 0; i < e->children.size(); ++i) {
                if (i) out += ' ';
                serialize_into(e->children[i], out);
            }
            out += ')';
            break;
    }
}

std::string serialize(const BoolExprPtr& e) {
    std::string out;
    serialize_into(e, out);
    return out;
}

std::uint64_t structural_hash(const BoolExprPtr& e) { return fnv1a64(serialize(e)); }

bool structurally_equal(const BoolExprPtr& a, const BoolExprPtr& b) {
    if (a.get() == b.get()) return true;
    return serialize(a) == serialize(b);
}

BoolExprPtr normalize(const BoolExprPtr& e) {
    switch (e->op) {
        case BoolOp::Atom:
        case BoolOp::Const:
            return e;
        case BoolOp::Not: {
            BoolExprPtr c = normalize(e->children[0]);
            if (c->op == BoolOp::Const) return BoolExpr::make_const(!c->value);
            if (c->op == BoolOp::Not) return c->children[0];  // already normalized
            return BoolExpr::make_not(c);
        }
        case BoolOp::And:
        case BoolOp::Or: {
            const bool is_and = e->op == BoolOp::And;
            std::vector<BoolExprPtr> flat;
            for (const auto& child : e->children) {
                BoolExprPtr c = normalize(child);
                if (c->op == e->op) {
                    flat.insert(flat.end(), c->children.begin(), c->children.end());
                } else {
                    flat.push_back(c);
                }
            }
            // Constant folding: the absorbing element wins, the neutral one drops.
            // Sort key places a negation right after the term it negates.
            auto sort_key = [](const BoolExprPtr& c) {
                if (c->op == BoolOp::Not) return serialize(c->children[0]) + "!";
                return serialize(c);
            };
            std::vector<std::pair<std::string, BoolExprPtr>> keyed;
            for (const auto& c : flat) {
                if (c->op == BoolOp::Const) {
                    if (c->value == is_and) continue;      // neutral
                    return BoolExpr::make_const(!is_and);  // absorbing
                }
                keyed.emplace_back(sort_key(c), c);
            }
            if (keyed.empty()) return BoolExpr::make_const(is_and);
            std::sort(keyed.begin(), keyed.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            keyed.erase(std::unique(keyed.begin(), keyed.end(),
                                    [](const auto& a, const auto& b) { return a.first == b.first; }),
                        keyed.end());
            std::vector<BoolExprPtr> out;
            out.reserve(keyed.size());
            for (auto& [k, c] : keyed) out.push_back(c);
            return is_and ? BoolExpr::make_and(std::move(out)) : BoolExpr::make_or(std::move(out));
        }
    }
    return e;
}

static BoolExprPtr nnf_impl(const BoolExprPtr& e, bool negated) {
    switch (e->op) {
        case BoolOp::Atom:
            return negated ? BoolExpr::make_not(e) : e;
        case BoolOp::Const:
            return BoolExpr::make_const(e->value != negated);
        case BoolOp::Not:
            return nnf_impl(e->children[0], !negated);
        case BoolOp::And:
        case BoolOp::Or: {
            std::vector<BoolExprPtr> cs;
            cs.reserve(e->children.size());
            for (const auto& c : e->children) cs.push_back(nnf_impl(c, negated));
            const bool make_and = (e->op == BoolOp::And) != negated;
            return make_and ? BoolExpr::make_and(std::move(cs))
                            : BoolExpr::make_or(std::move(cs));
        }
    }
    return e;
}

BoolExprPtr nnf(const BoolExprPtr& e) { return normalize(nnf_impl(e, false)); }

// One absorption sweep: in an And, drop any Or child that lists a sibling as a
// disjunct; dual for Or. Children must already be normalized.
static BoolExprPtr absorb_once(const BoolExprPtr& e, bool& changed) {
    if (e->op == BoolOp::Not) {
        BoolExprPtr c = absorb_once(e->children[0], changed);
        return changed ? BoolExpr::make_not(c) : e;
    }
    if (e->op != BoolOp::And && e->op != BoolOp::Or) return e;

    std::vector<BoolExprPtr> cs;
    cs.reserve(e->children.size());
    for (const auto& c : e->children) cs.push_back(absorb_once(c, changed));

    const BoolOp dual = e->op == BoolOp::And ? BoolOp::Or : BoolOp::And;
    std::vector<std::string> keys;
    keys.reserve(cs.size());
    for (const auto& c : cs) keys.push_back(serialize(c));

    std::vector<BoolExprPtr> kept;
    for (size_t i = 0; i < cs.size(); ++i) {
        bool absorbed = false;
        if (cs[i]->op == dual) {
            for (const auto& disjunct : cs[i]->children) {
                std::string dk = serialize(disjunct);
                for (size_t j = 0; j < cs.size(); ++j) {
                    if (j != i && keys[j] == dk) {
                        absorbed = true;
                        break;
                    }
                }
                if (absorbed) break;
            }
        }
        if (absorbed) {
            changed = true;
        } else {
            kept.push_back(cs[i]);
        }
    }
    if (kept.empty()) return cs[0];
    return e->op == BoolOp::And ? BoolExpr::make_and(std::move(kept))
                                : BoolExpr::make_or(std::move(kept));
}

BoolExprPtr simplify_absorb(const BoolExprPtr& e) {
    BoolExprPtr cur = normalize(e);
    for (int pass = 0; pass < 16; ++pass) {
        bool changed = false;
        cur = normalize(absorb_once(cur, changed));
        if (!changed) return cur;
    }
    return cur;
}

std::string canonical_key(const BoolExprPtr& e) { return serialize(normalize(e)); }

void collect_atoms(const BoolExprPtr& e, std::set<std::string>& out) {
    if (e->op == BoolOp::Atom) {
        out.insert(e->atom);
        return;
    }
    for (const auto& c : e->children) collect_atoms(c, out);
}

int atom_occurrences(const BoolExprPtr& e) {
    if (e->op == BoolOp::Atom) return 1;
    int n = 0;
    for (const auto& c : e->children) n += atom_occurrences(c);
    return n;
}

bool eval(const BoolExprPtr& e, const std::function<bool(const std::string&)>& assignment) {
    switch (e->op) {
        case BoolOp::Atom:
            return assignment(e->atom);
        case BoolOp::Const:
            return e->value;
        case BoolOp::Not:
            return !eval(e->children[0], assignment);
        case BoolOp::And:
            for (const auto& c : e->children)
                if (!eval(c, assignment)) return false;
            return true;
        case BoolOp::Or:
            for (const auto& c : e->children)
                if (eval(c, assignment)) return true;
            return false;
    }
    return false;
}

BoolExprPtr rename_atoms(const BoolExprPtr& e,
                         const std::unordered_map<std::string, std::string>& map) {
    switch (e->op) {
        case BoolOp::Atom: {
            auto it = map.find(e->atom);
            return it == map.end() ? e : BoolExpr::make_atom(it->second);
        }
        case BoolOp::Const:
            return e;
        default: {
            std::vector<BoolExprPtr> cs;
            cs.reserve(e->children.size());
            for (const auto& c : e->children) cs.push_back(rename_atoms(c, map));
            if (e->op == BoolOp::Not) return BoolExpr::make_not(cs[0]);
            return e->op == BoolOp::And ? BoolExpr::make_and(std::move(cs))
                                        : BoolExpr::make_or(std::move(cs));
        }
    }
}

BoolExprPtr timed_expr(const BoolExprPtr& e, int offset) {
    switch (e->op) {
        case BoolOp::Atom:
            return BoolExpr::make_atom(timed_name(e->atom, offset));
        case BoolOp::Const:
            return e;
        default: {
            std::vector<BoolExprPtr> cs;
            cs.reserve(e->children.size());
            for (const auto& c : e->children) cs.push_back(timed_expr(c, offset));
            if (e->op == BoolOp::Not) return BoolExpr::make_not(cs[0]);
            return e->op == BoolOp::And ? BoolExpr::make_and(std::move(cs))
                                        : BoolExpr::make_or(std::move(cs));
        }
    }
}

static int precedence(BoolOp op) {
    switch (op) {
        case BoolOp::Or:
            return 1;
        case BoolOp::And:
            return 2;
        default:
            return 3;
    }
}

static void print_into(const BoolExprPtr& e, std::string& out, int parent_prec) {
    const int prec = precedence(e->op);
    const bool parens = prec < parent_prec;
    if (parens) out += '(';
    switch (e->op) {
        case BoolOp::Atom:
            out += e->atom;
            break;
        case BoolOp::Const:
            out += e->value ? '1' : '0';
            break;
        case BoolOp::Not:
            out += '!';
            print_into(e->children[0], out, 3);
            break;
        case BoolOp::And:
        case BoolOp::Or: {
            const char* sep = e->op == BoolOp::And ? " && " : " || ";
            for (size_t i = 0; i < e->children.size(); ++i) {
                if (i) out += sep;
                print_into(e->children[i], out, prec + (i ? 1 : 0));
            }
            break;
        }
    }
    if (parens) out += ')';
}

std::string to_string(const BoolExprPtr& e) {
    std::string out;
    print_into(e, out, 0);
    return out;
}

}  // namespace arcane
