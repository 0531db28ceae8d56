/* assertion.hpp -- clocked implication assertions: AST, printer, parser
 *
 * Copyright (c) 2026 The Arcane Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "arcane/bool_expr.hpp"

namespace arcane {

/// Cycle delay range; a fixed delay ##N is lo == hi == N.
struct Delay {
    std::uint32_t lo = 0;
    std::uint32_t hi = 0;

    bool fixed() const { return lo == hi; }
    std::uint32_t width() const { return hi - lo + 1; }
    bool operator==(const Delay&) const = default;
};

/// A delay-separated chain of boolean expressions. `lead` is an optional
/// delay before the first expression (surface forms like "|-> ##2 c");
/// nested groups such as "##1 (##1 c)" are flattened at parse time by
/// summing delay prefixes.
struct Sequence {
    Delay lead{};
    BoolExprPtr head;
    std::vector<std::pair<Delay, BoolExprPtr>> tail;

    size_t item_count() const { return 1 + tail.size(); }
    const BoolExprPtr& item(size_t i) const { return i == 0 ? head : tail[i - 1].second; }
};

enum class AssertionKind { Implication, Propositional };

/// The unit of reduction: either antecedent |-> consequent over an optional
/// sampling clock, or a bare propositional expression (antecedent fixed to
/// true, both tails empty).
struct Assertion {
    std::string id;
    std::optional<std::string> clock;
    Sequence antecedent;
    Sequence consequent;
    AssertionKind kind = AssertionKind::Implication;
};

/// Parse per the assertion grammar. `a |=> b` desugars to `a |-> ##1 b`;
/// bare boolean text yields a propositional assertion. Throws ParseError
/// with line/column on malformed input.
Assertion parse_assertion(const std::string& text, const std::string& id);

/// Print the normalized form. Round-trip stable: parsing the output yields
/// the normalized assertion again, byte for byte.
std::string print_assertion(const Assertion& a);

/// Body without the clock prefix.
std::string print_assertion_body(const Assertion& a);

/// Normalized copy: boolean leaves in canonical form, ##[n:n] collapsed,
/// constant-true items dropped where position-neutral.
Assertion normalize(const Assertion& a);

std::set<std::string> atomic_propositions(const Assertion& a);

/// Total atom occurrences in the normalized assertion (both sides).
int atom_occurrences(const Assertion& a);

/// Structural equality modulo normalization (ids ignored).
bool equivalent_printed(const Assertion& a, const Assertion& b);

/// Stable content hash of the printed normal form (ids ignored).
std::uint64_t content_hash(const Assertion& a);

/// Canonical key of a sequence: normalized delays plus per-item canonical
/// expression keys. `anchor_last` keeps a trailing constant-true item
/// (end-offset anchor; use for antecedents; consequents pass false).
std::string canonical_key(const Sequence& s, bool anchor_last = true);

}  // namespace arcane
