/* temporal.hpp -- temporal endpoint alignment and timeline bucketing
 *
 * Copyright (c) 2026 The Arcane Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <map>
#include <optional>
#include <string>

#include "arcane/assertion.hpp"
#include "arcane/lasso.hpp"
#include "arcane/ltl.hpp"

namespace arcane {

struct TimedLiteral {
    std::string atom;
    int offset = 0;
    bool positive = true;
};

/// Time-stamped propositional form of one concrete delay choice: literals
/// bucketed by cycle offset, consequent offsets absolute from the antecedent
/// start (consequent head anchored at the antecedent end offset). Bucket
/// expressions are purely propositional, stored in negation normal form;
/// constant-true buckets are dropped.
struct TimedExpansion {
    std::map<int, BoolExprPtr> pre_buckets;
    std::map<int, BoolExprPtr> post_buckets;
    int max_offset = 0;

    std::string serialize() const;
};

/// One TimedExpansion per concrete choice of offsets in each range delay.
struct ExpansionSet {
    std::vector<TimedExpansion> expansions;
};

/// Range products above this are treated as reduction-opaque.
inline constexpr int kExpansionCap = 64;

/// Offsets above this refuse LTL conversion (tableau size guard).
inline constexpr int kOffsetCap = 64;

/// Rewrite into time-stamped obligations. Returns nullopt when the product of
/// range widths exceeds `cap` (the assertion is reduction-opaque) or an
/// offset exceeds the offset cap.
std::optional<ExpansionSet> align(const Assertion& a, int cap = kExpansionCap);

/// Inverse of align for a single expansion: consecutive-offset buckets are
/// re-joined with fixed delays. The result aligns back to `exp` modulo
/// bucket-level boolean normalization.
Assertion rebuild(const TimedExpansion& exp, const std::optional<std::string>& clock,
                  const std::string& id);

/// G over the conjunction of per-expansion implications, literals at offset k
/// encoded as k nested next-step operators. Propositional assertions map to
/// G(expr). Returns nullopt when alignment is refused.
std::optional<LtlPtr> to_ltl(const Assertion& a, int cap = kExpansionCap);

/// Direct cycle-wise evaluation of an assertion on an ultimately periodic
/// word, by position DP on the lasso quotient. Handles range delays without
/// expansion, so it also covers reduction-opaque assertions. Atoms are looked
/// up by name in `pool_ap`; absent atoms read as false.
bool sva_eval_on_lasso(const Assertion& a, const Lasso& lam,
                       const std::vector<std::string>& pool_ap);

/// Position-preserving view of the expansions: the timed premise plus the
/// cycle offset of every surface item, per expansion. Rule 1 edits consequent
/// items in place and needs offsets keyed by position, not by bucket.
struct AlignedView {
    struct Expansion {
        BoolExprPtr premise;            // conjunction over timed atoms; true if empty
        std::vector<int> post_offsets;  // one per consequent item
        int antecedent_end = 0;
    };
    std::vector<Expansion> expansions;
};

std::optional<AlignedView> aligned_view(const Assertion& a, int cap = kExpansionCap);

}  // namespace arcane
