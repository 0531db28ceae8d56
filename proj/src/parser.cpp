/* parser.cpp -- recursive-descent parser for the assertion grammar
 *
 * Copyright (c) 2026 The Arcane Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

#include "arcane/assertion.hpp"
#include "arcane/common.hpp"

namespace arcane {

namespace {

enum class Tok {
    Ident,
    Int,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Colon,
    Not,
    AndAnd,
    OrOr,
    Impl,      // |->
    ImplNext,  // |=>
    HashHash,
    At,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    int line;
    int col;
};

std::vector<Token> lex(const std::string& src) {
    std::vector<Token> toks;
    int line = 1, col = 1;
    size_t i = 0;
    auto push = [&](Tok k, std::string text, int l, int c) {
        toks.push_back({k, std::move(text), l, c});
    };
    while (i < src.size()) {
        char c = src[i];
        int l = line, co = col;
        auto advance = [&](size_t n) {
            for (size_t k = 0; k < n; ++k) {
                if (src[i + k] == '\n') {
                    ++line;
                    col = 1;
                } else {
                    ++col;
                }
            }
            i += n;
        };
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i;
            while (j < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
                ++j;
            push(Tok::Ident, src.substr(i, j - i), l, co);
            advance(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            push(Tok::Int, src.substr(i, j - i), l, co);
            advance(j - i);
            continue;
        }
        if (src.compare(i, 3, "|->") == 0) {
            push(Tok::Impl, "|->", l, co);
            advance(3);
        } else if (src.compare(i, 3, "|=>") == 0) {
            push(Tok::ImplNext, "|=>", l, co);
            advance(3);
        } else if (src.compare(i, 2, "||") == 0) {
            push(Tok::OrOr, "||", l, co);
            advance(2);
        } else if (src.compare(i, 2, "&&") == 0) {
            push(Tok::AndAnd, "&&", l, co);
            advance(2);
        } else if (src.compare(i, 2, "##") == 0) {
            push(Tok::HashHash, "##", l, co);
            advance(2);
        } else {
            switch (c) {
                case '|':
                    push(Tok::OrOr, "|", l, co);
                    break;
                case '&':
                    push(Tok::AndAnd, "&", l, co);
                    break;
                case '!':
                    push(Tok::Not, "!", l, co);
                    break;
                case '(':
                    push(Tok::LParen, "(", l, co);
                    break;
                case ')':
                    push(Tok::RParen, ")", l, co);
                    break;
                case '[':
                    push(Tok::LBrack, "[", l, co);
                    break;
                case ']':
                    push(Tok::RBrack, "]", l, co);
                    break;
                case ':':
                    push(Tok::Colon, ":", l, co);
                    break;
                case '@':
                    push(Tok::At, "@", l, co);
                    break;
                default:
                    throw ParseError(std::string("unexpected character '") + c + "'", l, co);
            }
            advance(1);
        }
    }
    toks.push_back({Tok::End, "", line, col});
    return toks;
}

class Parser {
public:
    explicit Parser(const std::string& src) : toks_(lex(src)) {}

    Assertion parse(const std::string& id) {
        Assertion a;
        a.id = id;
        if (peek().kind == Tok::End) throw ParseError("empty assertion text", 1, 1);
        if (peek().kind == Tok::At) a.clock = parse_clock();

        Sequence lhs = parse_seq();
        if (peek().kind == Tok::Impl || peek().kind == Tok::ImplNext) {
            const bool next_form = peek().kind == Tok::ImplNext;
            ++pos_;
            Sequence rhs = parse_seq();
            if (next_form) {
                rhs.lead.lo += 1;
                rhs.lead.hi += 1;
            }
            expect(Tok::End, "end of input");
            a.kind = AssertionKind::Implication;
            a.antecedent = std::move(lhs);
            a.consequent = std::move(rhs);
            return a;
        }
        expect(Tok::End, "'|->' or end of input");
        if (!(lhs.lead == Delay{}) || !lhs.tail.empty())
            throw ParseError("sequence without '|->' is not a valid assertion", peek().line,
                             peek().col);
        a.kind = AssertionKind::Propositional;
        a.antecedent = Sequence{Delay{}, BoolExpr::make_const(true), {}};
        a.consequent = Sequence{Delay{}, lhs.head, {}};
        return a;
    }

private:
    const Token& peek() const { return toks_[pos_]; }

    const Token& expect(Tok kind, const char* what) {
        if (peek().kind != kind)
            throw ParseError(std::string("expected ") + what, peek().line, peek().col);
        return toks_[pos_++];
    }

    std::string parse_clock() {
        expect(Tok::At, "'@'");
        expect(Tok::LParen, "'('");
        const Token& kw = expect(Tok::Ident, "'posedge'");
        if (kw.text != "posedge") throw ParseError("expected 'posedge'", kw.line, kw.col);
        std::string name = expect(Tok::Ident, "clock identifier").text;
        expect(Tok::RParen, "')'");
        return name;
    }

    Delay parse_delay() {
        if (peek().kind == Tok::Int) {
            std::uint32_t n = parse_int();
            return Delay{n, n};
        }
        const Token& open = expect(Tok::LBrack, "delay value or '['");
        std::uint32_t lo = parse_int();
        expect(Tok::Colon, "':'");
        std::uint32_t hi = parse_int();
        expect(Tok::RBrack, "']'");
        if (hi < lo)
            throw ParseError("delay range upper bound is smaller than lower bound", open.line,
                             open.col);
        return Delay{lo, hi};
    }

    std::uint32_t parse_int() {
        const Token& t = expect(Tok::Int, "integer");
        if (t.text.size() > 6) throw ParseError("delay value too large", t.line, t.col);
        return static_cast<std::uint32_t>(std::stoul(t.text));
    }

    // seq := ["##" delay] item { "##" delay item }. Items may be parenthesized
    // sub-sequences; their delays splice in with prefixes summed, so
    // "##1 (##1 c)" flattens to a lead of 2.
    Sequence parse_seq() {
        Delay lead{};
        if (peek().kind == Tok::HashHash) {
            ++pos_;
            lead = parse_delay();
        }
        Sequence seq = parse_seq_item();
        seq.lead.lo += lead.lo;
        seq.lead.hi += lead.hi;
        while (peek().kind == Tok::HashHash) {
            ++pos_;
            Delay d = parse_delay();
            Sequence frag = parse_seq_item();
            seq.tail.emplace_back(Delay{d.lo + frag.lead.lo, d.hi + frag.lead.hi}, frag.head);
            for (auto& item : frag.tail) seq.tail.push_back(std::move(item));
        }
        return seq;
    }

    Sequence parse_seq_item() {
        if (peek().kind == Tok::LParen) {
            size_t save = pos_;
            try {
                BoolExprPtr e = parse_boolexpr();
                return Sequence{Delay{}, e, {}};
            } catch (const ParseError&) {
                pos_ = save;
            }
            expect(Tok::LParen, "'('");
            Sequence inner = parse_seq();
            expect(Tok::RParen, "')'");
            return inner;
        }
        return Sequence{Delay{}, parse_boolexpr(), {}};
    }

    BoolExprPtr parse_boolexpr() { return parse_or(); }

    BoolExprPtr parse_or() {
        std::vector<BoolExprPtr> terms{parse_and()};
        while (peek().kind == Tok::OrOr) {
            ++pos_;
            terms.push_back(parse_and());
        }
        return BoolExpr::make_or(std::move(terms));
    }

    BoolExprPtr parse_and() {
        std::vector<BoolExprPtr> terms{parse_unary()};
        while (peek().kind == Tok::AndAnd) {
            ++pos_;
            terms.push_back(parse_unary());
        }
        return BoolExpr::make_and(std::move(terms));
    }

    BoolExprPtr parse_unary() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Not:
                ++pos_;
                return BoolExpr::make_not(parse_unary());
            case Tok::LParen: {
                ++pos_;
                BoolExprPtr e = parse_boolexpr();
                expect(Tok::RParen, "')'");
                return e;
            }
            case Tok::Ident:
                ++pos_;
                return BoolExpr::make_atom(t.text);
            case Tok::Int:
                if (t.text == "1" || t.text == "0") {
                    ++pos_;
                    return BoolExpr::make_const(t.text == "1");
                }
                throw ParseError("boolean constant must be 0 or 1", t.line, t.col);
            case Tok::End:
                throw ParseError("empty expression", t.line, t.col);
            default:
                throw ParseError("expected expression", t.line, t.col);
        }
    }

    std::vector<Token> toks_;
    size_t pos_ = 0;
};

}  // namespace

Assertion parse_assertion(const std::string& text, const std::string& id) {
    return Parser(text).parse(id);
}

}  // namespace arcane
