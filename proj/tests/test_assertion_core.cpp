/* test_assertion_core.cpp
 *
 * Copyright (c) 2026 The Arcane Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "arcane/assertion.hpp"
#include "arcane/common.hpp"
#include "oracle_util.hpp"

using namespace arcane;

TEST_CASE("parse: worked example with clock") {
    Assertion a = parse_assertion("@(posedge clk) a && b |-> c", "t1");
    CHECK(a.kind == AssertionKind::Implication);
    REQUIRE(a.clock.has_value());
    CHECK(*a.clock == "clk");
    CHECK(a.antecedent.head->op == BoolOp::And);
    CHECK(a.antecedent.tail.empty());
    CHECK(to_string(a.consequent.head) == "c");
}

TEST_CASE("parse: reflexive form and bare boolean") {
    Assertion refl = parse_assertion("a |-> a", "t2");
    CHECK(refl.kind == AssertionKind::Implication);
    CHECK(print_assertion(refl) == "a |-> a");

    Assertion prop = parse_assertion("x && !x", "t3");
    CHECK(prop.kind == AssertionKind::Propositional);
    CHECK(prop.antecedent.head->is_const(true));
    CHECK(prop.antecedent.tail.empty());
    CHECK(prop.consequent.head->op == BoolOp::And);
    CHECK(print_assertion(prop) == "x && !x");
}

TEST_CASE("parse errors carry position") {
    CHECK_THROWS_AS(parse_assertion("", "e1"), ParseError);
    CHECK_THROWS_AS(parse_assertion("a &&", "e2"), ParseError);
    CHECK_THROWS_AS(parse_assertion("a ##[3:1] b |-> c", "e3"), ParseError);
    try {
        parse_assertion("a &&", "e4");
        FAIL("expected throw");
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
        CHECK(e.col > 1);
        CHECK(std::string(e.what()).find("line 1") != std::string::npos);
    }
}

TEST_CASE("print: normalization examples") {
    CHECK(print_assertion(parse_assertion("(a)&&(b)|->c", "p1")) == "a && b |-> c");
    CHECK(print_assertion(parse_assertion("a |=> b", "p2")) == "a |-> ##1 b");
    CHECK(print_assertion(parse_assertion("a ##[1:1] b |-> c", "p3")) == "a ##1 b |-> c");
}

TEST_CASE("print: operator aliases and sequences") {
    CHECK(print_assertion(parse_assertion("a & b | c |-> d", "p4")) == "a && b || c |-> d");
    CHECK(print_assertion(parse_assertion("(A && B) ##1 C |-> C && D", "p5")) ==
          "(A && B) ##1 C |-> C && D");
    CHECK(print_assertion(parse_assertion("a |-> ##1 (##1 c)", "p6")) == "a |-> ##2 c");
    CHECK(print_assertion(parse_assertion("@(posedge clk) a|->b", "p7")) ==
          "@(posedge clk) a |-> b");
}

TEST_CASE("parser/printer round trip on generated assertions") {
    Rng rng(20260810);
    for (int trial = 0; trial < 300; ++trial) {
        Assertion g = testutil::random_assertion(rng, 4, 3, "rt");
        std::string printed = print_assertion(g);
        Assertion back = parse_assertion(printed, g.id);
        CHECK(print_assertion(back) == printed);  // fixpoint of normalize
    }
}

TEST_CASE("canonical_key congruences") {
    auto key = [](const std::string& text) {
        return canonical_key(parse_assertion(text, "k").consequent.head);
    };
    CHECK(key("a && b") == key("b && a"));
    CHECK(key("a && a") == key("a"));
    CHECK(key("!!a") == key("a"));
    CHECK(key("(a && b) && c") == key("a && (b && c)"));
    CHECK(key("a && 1") == key("a"));
    CHECK(key("a || 0") == key("a"));
    CHECK(key("a && 0") == key("0"));
    CHECK(key("a |-> b") != key("x"));  // sanity: different expressions differ
}

TEST_CASE("canonical_key is congruent under random subterm rewrites") {
    Rng rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        BoolExprPtr e = testutil::random_expr(rng, 4, 3);
        BoolExprPtr rewritten = testutil::random_equivalence_rewrite(rng, e);
        CHECK(canonical_key(e) == canonical_key(rewritten));
    }
}

TEST_CASE("atomic_propositions") {
    auto atoms = [](const std::string& text) {
        return atomic_propositions(parse_assertion(text, "ap"));
    };
    CHECK(atoms("a && b |-> c") == std::set<std::string>{"a", "b", "c"});
    CHECK(atoms("a |-> a") == std::set<std::string>{"a"});
    CHECK(atoms("(A && B) ##1 C |-> C && D") == std::set<std::string>{"A", "B", "C", "D"});
}

TEST_CASE("atomic_propositions stable under normalization") {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        Assertion g = testutil::random_assertion(rng, 4, 2, "an");
        Assertion n = normalize(g);
        CHECK(atomic_propositions(g) == atomic_propositions(n));
    }
}

TEST_CASE("clock kept distinct in printing and keys") {
    Assertion with = parse_assertion("@(posedge clkA) a |-> b", "c1");
    Assertion without = parse_assertion("a |-> b", "c2");
    CHECK(print_assertion(with) != print_assertion(without));
    CHECK(content_hash(with) != content_hash(without));
}
