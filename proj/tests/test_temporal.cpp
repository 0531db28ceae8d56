/* test_temporal.cpp
 *
 * Copyright (c) 2026 The Arcane Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "arcane/buchi.hpp"
#include "arcane/temporal.hpp"
#include "oracle_util.hpp"

using namespace arcane;

namespace {
std::string bucket_str(const std::map<int, BoolExprPtr>& buckets) {
    std::string out;
    for (const auto& [k, e] : buckets) out += std::to_string(k) + ":" + to_string(e) + ";";
    return out;
}
}  // namespace

TEST_CASE("align: worked example buckets") {
    Assertion a = parse_assertion("(A && B) ##1 C |-> C && D", "w1");
    auto set = align(a);
    REQUIRE(set.has_value());
    REQUIRE(set->expansions.size() == 1);
    const auto& exp = set->expansions[0];
    CHECK(bucket_str(exp.pre_buckets) == "0:A && B;1:C;");
    CHECK(bucket_str(exp.post_buckets) == "1:C && D;");
    CHECK(exp.max_offset == 1);
}

TEST_CASE("align: nested prefixes sum") {
    Assertion a = parse_assertion("a |-> ##1 (##1 c)", "w2");
    auto set = align(a);
    REQUIRE(set.has_value());
    REQUIRE(set->expansions.size() == 1);
    CHECK(bucket_str(set->expansions[0].post_buckets) == "2:c;");
}

TEST_CASE("align: range enumeration") {
    Assertion a = parse_assertion("a ##[1:2] b |-> c", "w3");
    auto set = align(a);
    REQUIRE(set.has_value());
    REQUIRE(set->expansions.size() == 2);
    CHECK(bucket_str(set->expansions[0].pre_buckets) == "0:a;1:b;");
    CHECK(bucket_str(set->expansions[1].pre_buckets) == "0:a;2:b;");
    // Consequent anchored at the antecedent end of each expansion.
    CHECK(bucket_str(set->expansions[0].post_buckets) == "1:c;");
    CHECK(bucket_str(set->expansions[1].post_buckets) == "2:c;");
}

TEST_CASE("align: expansion cap marks reduction-opaque") {
    Assertion a = parse_assertion("a ##[0:7] b ##[0:7] c ##[0:7] d |-> e", "w4");
    CHECK(!align(a).has_value());  // 512 > 64
    CHECK(align(a, 512).has_value());
}

TEST_CASE("align: size equals product of range widths") {
    Rng rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        Assertion a = testutil::random_assertion(rng, 3, 2, "sz");
        if (a.kind != AssertionKind::Implication) continue;
        auto set = align(a);
        if (!set) continue;
        std::uint64_t product = 1;
        auto count = [&](const Sequence& s) {
            product *= s.lead.width();
            for (const auto& [d, e] : s.tail) product *= d.width();
        };
        count(a.antecedent);
        count(a.consequent);
        CHECK(set->expansions.size() == product);
    }
}

TEST_CASE("rebuild: worked examples") {
    TimedExpansion exp;
    exp.pre_buckets[0] = parse_assertion("A && B", "x").consequent.head;
    exp.pre_buckets[1] = BoolExpr::make_atom("C");
    exp.post_buckets[1] = BoolExpr::make_atom("D");
    exp.max_offset = 1;
    Assertion rebuilt = rebuild(exp, std::nullopt, "rb1");
    CHECK(print_assertion(rebuilt) == "(A && B) ##1 C |-> D");

    TimedExpansion exp2;
    exp2.pre_buckets[0] = BoolExpr::make_atom("a");
    exp2.post_buckets[2] = BoolExpr::make_atom("c");
    exp2.max_offset = 2;
    CHECK(print_assertion(rebuild(exp2, std::nullopt, "rb2")) == "a |-> ##2 c");

    TimedExpansion exp3;
    exp3.pre_buckets[0] = BoolExpr::make_const(true);
    exp3.post_buckets[0] = BoolExpr::make_const(false);
    CHECK(print_assertion(rebuild(exp3, std::nullopt, "rb3")) == "1 |-> 0");
}

TEST_CASE("rebuild round trip is language-equivalent (lasso oracle)") {
    Rng rng(7);
    int checked = 0;
    for (int trial = 0; trial < 200 && checked < 40; ++trial) {
        Assertion a = testutil::random_assertion(rng, 3, 2, "rt");
        if (a.kind != AssertionKind::Implication) continue;
        auto fixed = [](const Sequence& s) {
            if (!s.lead.fixed()) return false;
            for (const auto& [d, e] : s.tail)
                if (!d.fixed()) return false;
            return true;
        };
        if (!fixed(a.antecedent) || !fixed(a.consequent)) continue;
        auto set = align(a);
        REQUIRE(set.has_value());
        REQUIRE(set->expansions.size() == 1);
        Assertion rebuilt = rebuild(set->expansions[0], a.clock, a.id + "_rb");
        CHECK(testutil::conjunction_equal_on_lassos(
            {a}, {rebuilt}, 200, hash_combine(7, static_cast<std::uint64_t>(trial))));
        ++checked;
    }
    CHECK(checked >= 40);
}

TEST_CASE("prefix-sum law: ##m(##n phi) aligns like ##(m+n) phi") {
    for (int m = 0; m <= 2; ++m) {
        for (int n = 0; n <= 2; ++n) {
            std::string nested = "a |-> ##" + std::to_string(m) + " (##" + std::to_string(n) +
                                 " (c && d))";
            std::string flat = "a |-> ##" + std::to_string(m + n) + " (c && d)";
            auto e1 = align(parse_assertion(nested, "ps1"));
            auto e2 = align(parse_assertion(flat, "ps2"));
            REQUIRE(e1.has_value());
            REQUIRE(e2.has_value());
            REQUIRE(e1->expansions.size() == 1);
            CHECK(bucket_str(e1->expansions[0].post_buckets) ==
                  bucket_str(e2->expansions[0].post_buckets));
            CHECK(bucket_str(e1->expansions[0].pre_buckets) ==
                  bucket_str(e2->expansions[0].pre_buckets));
        }
    }
}

TEST_CASE("align never changes atomic propositions") {
    Rng rng(11);
    for (int trial = 0; trial < 150; ++trial) {
        Assertion a = testutil::random_assertion(rng, 4, 2, "ap");
        auto set = align(a);
        if (!set) continue;
        std::set<std::string> bucket_atoms;
        for (const auto& exp : set->expansions) {
            for (const auto& [k, e] : exp.pre_buckets) collect_atoms(e, bucket_atoms);
            for (const auto& [k, e] : exp.post_buckets) collect_atoms(e, bucket_atoms);
        }
        CHECK(bucket_atoms == atomic_propositions(a));
    }
}

TEST_CASE("to_ltl: basic implications") {
    auto f1 = to_ltl(parse_assertion("a |-> c", "l1"));
    REQUIRE(f1.has_value());
    CHECK(to_string(*f1) == "G((!a | c))");

    auto f2 = to_ltl(parse_assertion("a |-> ##1 c", "l2"));
    REQUIRE(f2.has_value());
    CHECK(to_string(*f2) == "G((!a | X(c)))");

    auto fp = to_ltl(parse_assertion("x && !x", "l3"));
    REQUIRE(fp.has_value());
    CHECK(to_string(*fp) == "G((x & !x))");
}

TEST_CASE("to_ltl: cap refusal") {
    CHECK(!to_ltl(parse_assertion("a ##[0:7] b ##[0:7] c ##[0:7] d |-> e", "l4")).has_value());
}

TEST_CASE("to_ltl agrees with direct cycle-wise evaluation") {
    // The worked example plus random assertions, 200 lassos each: the LTL
    // route against the independent cycle-wise route.
    std::vector<Assertion> pool{parse_assertion("(A && B) ##1 C |-> C && D", "cw0")};
    Rng rng(23);
    for (int i = 0; i < 25; ++i) pool.push_back(testutil::random_assertion(rng, 3, 2, "cw"));

    for (const auto& a : pool) {
        auto f = to_ltl(a);
        if (!f) continue;
        std::set<std::string> atoms = atomic_propositions(a);
        std::vector<std::string> ap(atoms.begin(), atoms.end());
        LassoPool lassos = sample_lassos(ap, 200, content_hash(a));
        for (const auto& lam : lassos.lassos) {
            CHECK(eval_on_lasso(*f, lam, lassos.ap) == sva_eval_on_lasso(a, lam, lassos.ap));
        }
    }
}
