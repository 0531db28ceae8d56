/* test_sat.cpp
 *
 * Copyright (c) 2026 The Arcane Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "arcane/sat.hpp"
#include "oracle_util.hpp"

using namespace arcane;

TEST_CASE("is_sat: direct CNF cases") {
    CnfFormula contradiction;
    int a = contradiction.var("a");
    contradiction.clauses = {{a}, {-a}};
    CHECK(!is_sat(contradiction));

    CnfFormula disj;
    int x = disj.var("a"), y = disj.var("b");
    disj.clauses = {{x, y}};
    CHECK(is_sat(disj));

    CnfFormula empty;  // no clauses: TRUE
    CHECK(is_sat(empty));
    CnfFormula empty_clause;
    empty_clause.clauses = {{}};
    CHECK(!is_sat(empty_clause));
}

TEST_CASE("is_sat licenses the worked-example pruning") {
    // (A@0 & B@0 & C@1) & !(C@1) is unsatisfiable.
    Assertion a = parse_assertion("(A && B) ##1 C |-> C && D", "we");
    auto view = aligned_view(a);
    REQUIRE(view.has_value());
    REQUIRE(view->expansions.size() == 1);
    auto res = entails(view->expansions[0].premise, TimedLiteral{"C", 1, true});
    REQUIRE(res.has_value());
    CHECK(*res);
}

TEST_CASE("is_sat agrees with brute-force enumeration") {
    Rng rng(321);
    int trials = 0;
    for (int i = 0; i < 5000; ++i) {
        BoolExprPtr e = testutil::random_expr(rng, 4, 4);
        std::set<std::string> atom_set;
        collect_atoms(e, atom_set);
        if (atom_set.size() > 12) continue;
        std::vector<std::string> atoms(atom_set.begin(), atom_set.end());
        auto table = truth_table_sat_set(e, atoms);
        REQUIRE(table.has_value());
        bool brute = table->count() > 0;
        CHECK(expr_sat(e) == brute);
        ++trials;
    }
    CHECK(trials >= 4500);
}

TEST_CASE("entails: bucket-level examples") {
    // pre = A&B at 0 and C at 1 entails C@1.
    Assertion we = parse_assertion("(A && B) ##1 C |-> C && D", "e1");
    auto view = aligned_view(we);
    REQUIRE(view.has_value());
    const auto& premise = view->expansions[0].premise;
    CHECK(entails(premise, TimedLiteral{"C", 1, true}) == std::optional<bool>(true));
    CHECK(entails(premise, TimedLiteral{"D", 1, true}) == std::optional<bool>(false));

    // Independent atoms.
    BoolExprPtr just_a = BoolExpr::make_atom(timed_name("A", 0));
    CHECK(entails(just_a, TimedLiteral{"B", 0, true}) == std::optional<bool>(false));

    // Inconsistent antecedent entails everything.
    BoolExprPtr inconsistent = BoolExpr::make_and(
        {BoolExpr::make_atom(timed_name("A", 0)),
         BoolExpr::make_not(BoolExpr::make_atom(timed_name("A", 0)))});
    CHECK(entails(inconsistent, TimedLiteral{"Z", 0, true}) == std::optional<bool>(true));
}

TEST_CASE("entails: budget refusal") {
    std::vector<BoolExprPtr> conj;
    for (int i = 0; i < 70; ++i)
        conj.push_back(BoolExpr::make_atom("v" + std::to_string(i) + "@0"));
    BoolExprPtr wide = BoolExpr::make_and(std::move(conj));
    CHECK(!entails(wide, TimedLiteral{"v0", 0, true}).has_value());
    CHECK(entails(wide, TimedLiteral{"v0", 0, true}, 128).has_value());
}

namespace {
std::optional<bool> assertions_equivalent(const std::string& ta, const std::string& tb) {
    auto ea = align(parse_assertion(ta, "qa"));
    auto eb = align(parse_assertion(tb, "qb"));
    REQUIRE(ea.has_value());
    REQUIRE(eb.has_value());
    return equivalent(*ea, *eb);
}
std::optional<bool> assertions_imply(const std::string& ta, const std::string& tb) {
    auto ea = align(parse_assertion(ta, "qa"));
    auto eb = align(parse_assertion(tb, "qb"));
    REQUIRE(ea.has_value());
    REQUIRE(eb.has_value());
    return implies(*ea, *eb);
}
}  // namespace

TEST_CASE("equivalent: spec examples") {
    CHECK(assertions_equivalent("a |-> b", "a |-> b && b") == std::optional<bool>(true));
    CHECK(assertions_equivalent("a |-> b", "a |-> !b") == std::optional<bool>(false));
    CHECK(assertions_equivalent("a |-> ##1 c", "a ##1 1 |-> c") == std::optional<bool>(true));
}

TEST_CASE("equivalent: the timed-SAT route agrees with the lasso oracle") {
    // The DERIVED pair, cross-checked on 500 sampled lassos.
    Assertion a = parse_assertion("a |-> ##1 c", "x1");
    Assertion b = parse_assertion("a ##1 1 |-> c", "x2");
    CHECK(testutil::conjunction_equal_on_lassos({a}, {b}, 500, 2026));
}

TEST_CASE("implies: spec examples") {
    CHECK(assertions_imply("a |-> c", "a && b |-> c") == std::optional<bool>(true));
    CHECK(assertions_imply("1 |-> 0", "x |-> y") == std::optional<bool>(true));
    CHECK(assertions_imply("a |-> c", "a |-> !c") == std::optional<bool>(false));
}

TEST_CASE("implies is reflexive and transitive; equivalent = both directions") {
    Rng rng(55);
    int triples = 0;
    while (triples < 60) {
        Assertion a = testutil::random_assertion(rng, 3, 1, "ra");
        Assertion b = testutil::random_assertion(rng, 3, 1, "rb");
        Assertion c = testutil::random_assertion(rng, 3, 1, "rc");
        auto ea = align(a), eb = align(b), ec = align(c);
        if (!ea || !eb || !ec) continue;
        ++triples;

        CHECK(implies(*ea, *ea) == std::optional<bool>(true));  // reflexive

        auto ab = implies(*ea, *eb), bc = implies(*eb, *ec), ac = implies(*ea, *ec);
        if (ab && bc && ac && *ab && *bc) CHECK(*ac);  // transitive

        auto ba = implies(*eb, *ea);
        auto eq = equivalent(*ea, *eb);
        if (ab && ba && eq) CHECK(*eq == (*ab && *ba));
    }
}

TEST_CASE("equivalent is an equivalence relation") {
    Rng rng(77);
    int triples = 0;
    while (triples < 40) {
        Assertion a = testutil::random_assertion(rng, 2, 1, "ea");
        Assertion b = testutil::random_assertion(rng, 2, 1, "eb");
        Assertion c = testutil::random_assertion(rng, 2, 1, "ec");
        auto ea = align(a), eb = align(b), ec = align(c);
        if (!ea || !eb || !ec) continue;
        ++triples;
        CHECK(equivalent(*ea, *ea) == std::optional<bool>(true));                 // reflexive
        CHECK(equivalent(*ea, *eb) == equivalent(*eb, *ea));                      // symmetric
        auto ab = equivalent(*ea, *eb), bc = equivalent(*eb, *ec), ac = equivalent(*ea, *ec);
        if (ab && bc && ac && *ab && *bc) CHECK(*ac);                             // transitive
    }
}

TEST_CASE("truth_table_sat_set: examples") {
    auto just_a = truth_table_sat_set(BoolExpr::make_atom("a"), {"a"});
    REQUIRE(just_a.has_value());
    CHECK(just_a->count() == 1);
    CHECK(just_a->test(1));
    CHECK(!just_a->test(0));

    BoolExprPtr a_or_b = BoolExpr::make_or({BoolExpr::make_atom("a"), BoolExpr::make_atom("b")});
    auto table = truth_table_sat_set(a_or_b, {"a", "b"});
    REQUIRE(table.has_value());
    CHECK(table->count() == 3);
    CHECK(!table->test(0));
    CHECK(table->test(1));
    CHECK(table->test(2));
    CHECK(table->test(3));
}

TEST_CASE("truth_table_sat_set: Jaccard of a->b vs a->!b is 0.5") {
    Assertion f1 = parse_assertion("!a || b", "j1");
    Assertion f2 = parse_assertion("!a || !b", "j2");
    auto t1 = truth_table_sat_set(f1.consequent.head, {"a", "b"});
    auto t2 = truth_table_sat_set(f2.consequent.head, {"a", "b"});
    REQUIRE(t1.has_value());
    REQUIRE(t2.has_value());
    CHECK(sat_set_jaccard(*t1, *t2) == doctest::Approx(0.5));
}

TEST_CASE("truth_table_sat_set: refusal above 20 atoms") {
    std::vector<std::string> atoms;
    std::vector<BoolExprPtr> lits;
    for (int i = 0; i < 21; ++i) {
        atoms.push_back("x" + std::to_string(i));
        lits.push_back(BoolExpr::make_atom(atoms.back()));
    }
    CHECK(!truth_table_sat_set(BoolExpr::make_or(std::move(lits)), atoms).has_value());
}
