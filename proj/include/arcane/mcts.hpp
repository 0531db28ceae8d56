/* mcts.hpp -- per-cluster MDP and UCT search over rule sequences
 *
 * Copyright (c) 2026 The Arcane Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "arcane/assertion.hpp"
#include "arcane/cluster.hpp"
#include "arcane/config.hpp"
#include "arcane/rules.hpp"

namespace arcane {

struct ReductionState {
    std::vector<Assertion> assertions;
    int assertion_count = 0;
    int atom_count = 0;
    std::vector<RuleId> history;
    std::uint64_t content = 0;  // hash of the printed set, order-insensitive

    static ReductionState from(std::vector<Assertion> assertions, AtomMetric metric);
};

struct SearchConfig {
    double exploration = std::sqrt(2.0);
    int patience = 3;
    int max_depth = 12;
    int rollout_depth = 6;
    int iteration_cap = 200;
    int certify_samples = 500;
    std::uint64_t seed = 1;
    AtomMetric atom_metric = AtomMetric::Occurrences;

    static SearchConfig from(const PipelineConfig& cfg);
};

class SearchNode {
public:
    ReductionState state;
    SearchNode* parent = nullptr;
    std::map<RuleId, std::unique_ptr<SearchNode>> children;
    int visits = 0;                       // N(s)
    std::map<RuleId, int> edge_visits;    // N(s,a)
    std::map<RuleId, double> edge_value;  // Q(s,a), mean trajectory reward

    bool fully_expanded() const { return children.size() == kAllRules.size(); }
};

/// Environment shared by one search: memoized certified transitions and the
/// rollback on certificate failure.
class ReductionEnv {
public:
    ReductionEnv(const PipelineConfig& cfg, SearchConfig scfg)
        : cfg_(cfg), scfg_(scfg) {}

    /// Applies the rule and certifies the result; a failed certificate rolls
    /// back to the unchanged state (delta 0). Memoized by (content, rule).
    ReductionState transition(const ReductionState& s, RuleId r);

    /// Eq-style step reward: drop in assertion count plus drop in atom count.
    static double reward(const ReductionState& prev, const ReductionState& next);

    /// True when no rule changes the state.
    bool is_terminal(const ReductionState& s);

    int certificate_incidents = 0;
    std::map<RuleId, int> rule_changes;        // state-changing applications
    std::map<RuleId, int> rule_removed;        // assertions removed per rule

private:
    const PipelineConfig& cfg_;
    SearchConfig scfg_;
    std::map<std::pair<std::uint64_t, RuleId>, ReductionState> memo_;
};

/// UCT argmax with expansion-first convention; ties break in rule order.
RuleId uct_select(const SearchNode& node, double c);

struct IterationResult {
    double trajectory_reward = 0.0;
    ReductionState terminal;
};

/// One selection / expansion / simulation / backpropagation pass. The root's
/// first expansion is always Rule 1.
IterationResult one_iteration(SearchNode& root, ReductionEnv& env, const SearchConfig& cfg,
                              std::uint64_t iteration_index);

struct ClusterReduction {
    std::vector<Assertion> assertions;
    double best_reward = 0.0;
    int iterations = 0;
    std::map<RuleId, int> rule_changes;
    std::map<RuleId, int> rule_removed;
    int certificate_incidents = 0;
    double millis = 0.0;
};

/// Search a single cluster: iterate until the best trajectory reward fails to
/// improve `patience` times in a row or the iteration cap is hit, then
/// extract the best trajectory's terminal assertion set.
ClusterReduction mcts_reduce(const std::vector<Assertion>& cluster, const PipelineConfig& cfg,
                             const SearchConfig& scfg);

struct CorpusReduction {
    std::vector<Assertion> assertions;
    std::vector<ClusterReduction> per_cluster;
    int certificate_incidents = 0;
};

/// Reduce every cluster independently (bounded worker pool), seeds derived
/// from (global seed, cluster index); output ordered by cluster index.
CorpusReduction reduce_corpus(const std::vector<std::vector<Assertion>>& clusters,
                              const PipelineConfig& cfg);

/// Baselines for search-quality comparisons: one rule repeated to fixpoint,
/// and a fixed-order round robin to fixpoint.
std::vector<Assertion> reduce_single_rule(const std::vector<Assertion>& cluster, RuleId r,
                                          const PipelineConfig& cfg);
std::vector<Assertion> reduce_round_robin(const std::vector<Assertion>& cluster,
                                          const PipelineConfig& cfg);

}  // namespace arcane
