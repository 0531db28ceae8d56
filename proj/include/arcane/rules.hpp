/* rules.hpp -- the five semantics-preserving reduction rules
 *
 * Copyright (c) 2026 The Arcane Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arcane/assertion.hpp"
#include "arcane/config.hpp"
#include "arcane/lasso.hpp"

namespace arcane {

enum class RuleId {
    R1_IntraSimplify,
    R2_PostConjunction,
    R3_PreDisjunction,
    R4_EquivalenceDedup,
    R5_ImplicationPrune,
};

inline constexpr std::array<RuleId, 5> kAllRules = {
    RuleId::R1_IntraSimplify,  RuleId::R2_PostConjunction, RuleId::R3_PreDisjunction,
    RuleId::R4_EquivalenceDedup, RuleId::R5_ImplicationPrune,
};

const char* rule_name(RuleId r);  // "R1".."R5"

struct RuleOutcome {
    std::vector<Assertion> new_set;
    std::vector<std::string> removed;
    std::vector<std::pair<std::string, std::string>> rewritten;  // old id -> new id
    std::vector<std::pair<std::vector<std::string>, std::string>> merged;
    std::vector<std::string> falsum_flagged;
    int delta_assertions = 0;
    int delta_atoms = 0;

    bool changed() const { return !removed.empty() || !rewritten.empty() || !merged.empty(); }
};

/// Intra-assertion simplification: boolean cleanup of every item, the
/// non-temporal micro-rules, and bucket-level entailment pruning of the
/// consequent. Deletions and rewrites are per assertion; opaque assertions
/// pass through untouched.
RuleOutcome apply_rule1(const std::vector<Assertion>& s,
                        const PipelineConfig& cfg = PipelineConfig{});

/// Common-antecedent consequent conjunction, grouped by clock and the
/// canonical antecedent key. Only members with fixed-delay consequents merge.
RuleOutcome apply_rule2(const std::vector<Assertion>& s,
                        const PipelineConfig& cfg = PipelineConfig{});

/// Common-consequent antecedent disjunction: bucket-wise OR where exactly one
/// position differs, plus compaction of adjacent-or-overlapping delay ranges.
RuleOutcome apply_rule3(const std::vector<Assertion>& s,
                        const PipelineConfig& cfg = PipelineConfig{});

/// Pairwise equivalence dedup via time-stamped SAT; the survivor has fewer
/// atoms (ties: smaller id). Opaque pairs are probed by bounded lasso
/// refutation, which can only prove non-equivalence, so they never merge.
RuleOutcome apply_rule4(const std::vector<Assertion>& s,
                        const PipelineConfig& cfg = PipelineConfig{});

/// Strict-subsumption pruning: delete the implied (weaker) assertion. Falsum
/// consequents are kept and flagged. Single pass in ascending id order;
/// an assertion used to justify a deletion is itself protected this pass.
RuleOutcome apply_rule5(const std::vector<Assertion>& s,
                        const PipelineConfig& cfg = PipelineConfig{});

RuleOutcome apply_rule(RuleId r, const std::vector<Assertion>& s,
                       const PipelineConfig& cfg = PipelineConfig{});

struct Certificate {
    bool ok = true;
    int samples = 0;
    int failures = 0;
    std::string counterexample;  // printed lasso letters, empty when ok
};

/// Conjunction-level semantics check on shared sampled lassos: the old and
/// new sets must agree on every lasso. Alignable members are evaluated via
/// the LTL route, opaque members via direct cycle-wise evaluation. Any
/// counterexample fails the certificate (caller rolls the rule back).
Certificate certify(const std::vector<Assertion>& old_set,
                    const std::vector<Assertion>& new_set, int samples, std::uint64_t seed);

/// Atom-count metric used by rewards and survivor choice.
int set_atom_count(const std::vector<Assertion>& s, AtomMetric metric);

}  // namespace arcane
