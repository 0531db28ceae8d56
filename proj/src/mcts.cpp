/* mcts.cpp
 *
 * Copyright (c) 2026 The Arcane Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "arcane/mcts.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "arcane/common.hpp"

namespace arcane {

ReductionState ReductionState::from(std::vector<Assertion> assertions, AtomMetric metric) {
    ReductionState s;
    s.assertion_count = static_cast<int>(assertions.size());
    s.atom_count = set_atom_count(assertions, metric);
    // Order-insensitive content hash: combine sorted member prints.
    std::vector<std::string> prints;
    prints.reserve(assertions.size());
    for (const auto& a : assertions) prints.push_back(print_assertion(a));
    std::sort(prints.begin(), prints.end());
    std::uint64_t h = fnv1a64("state");
    for (const auto& p : prints) h = hash_combine(h, fnv1a64(p));
    s.content = h;
    s.assertions = std::move(assertions);
    return s;
}

SearchConfig SearchConfig::from(const PipelineConfig& cfg) {
    SearchConfig s;
    s.exploration = cfg.exploration;
    s.patience = cfg.patience;
    s.max_depth = cfg.max_depth;
    s.rollout_depth = cfg.rollout_depth;
    s.iteration_cap = cfg.mcts_iterations;
    s.certify_samples = cfg.certify_samples;
    s.seed = cfg.seed;
    s.atom_metric = cfg.atom_metric;
    return s;
}

ReductionState ReductionEnv::transition(const ReductionState& s, RuleId r) {
    auto key = std::make_pair(s.content, r);
    auto it = memo_.find(key);
    if (it != memo_.end()) {
        ReductionState next = it->second;
        next.history = s.history;
        next.history.push_back(r);
        return next;
    }

    RuleOutcome outcome = apply_rule(r, s.assertions, cfg_);
    ReductionState next;
    if (!outcome.changed()) {
        next = s;
    } else {
        Certificate cert = certify(s.assertions, outcome.new_set, scfg_.certify_samples,
                                   hash_combine(scfg_.seed, s.content));
        if (!cert.ok) {
            // Soundness incident: roll the application back.
            ++certificate_incidents;
            next = s;
        } else {
            next = ReductionState::from(std::move(outcome.new_set), scfg_.atom_metric);
            ++rule_changes[r];
            rule_removed[r] += outcome.delta_assertions;
        }
    }
    ReductionState memoized = next;
    memoized.history.clear();
    memo_.emplace(key, std::move(memoized));
    next.history = s.history;
    next.history.push_back(r);
    return next;
}

double ReductionEnv::reward(const ReductionState& prev, const ReductionState& next) {
    return static_cast<double>(prev.assertion_count - next.assertion_count) +
           static_cast<double>(prev.atom_count - next.atom_count);
}

bool ReductionEnv::is_terminal(const ReductionState& s) {
    for (RuleId r : kAllRules) {
        if (transition(s, r).content != s.content) return false;
    }
    return true;
}

RuleId uct_select(const SearchNode& node, double c) {
    // Unvisited actions take priority, in rule order.
    for (RuleId r : kAllRules) {
        auto it = node.edge_visits.find(r);
        if (it == node.edge_visits.end() || it->second == 0) return r;
    }
    double best = -1.0;
    RuleId best_rule = kAllRules[0];
    for (RuleId r : kAllRules) {
        double q = node.edge_value.at(r);
        double nv = static_cast<double>(node.edge_visits.at(r));
        double score = q + c * std::sqrt(std::log(static_cast<double>(node.visits)) / nv);
        if (score > best + 1e-12) {
            best = score;
            best_rule = r;
        }
    }
    return best_rule;
}

IterationResult one_iteration(SearchNode& root, ReductionEnv& env, const SearchConfig& cfg,
                              std::uint64_t iteration_index) {
    // Selection: walk UCT through fully expanded nodes.
    std::vector<SearchNode*> path{&root};
    std::vector<RuleId> actions;
    SearchNode* node = &root;
    while (node->fully_expanded() &&
           static_cast<int>(node->state.history.size()) < cfg.max_depth &&
           !env.is_terminal(node->state)) {
        RuleId r = uct_select(*node, cfg.exploration);
        actions.push_back(r);
        node = node->children.at(r).get();
        path.push_back(node);
    }

    // Expansion: add the first unexplored child in rule order (the root's
    // first expansion is therefore Rule 1).
    if (!node->fully_expanded() &&
        static_cast<int>(node->state.history.size()) < cfg.max_depth &&
        !env.is_terminal(node->state)) {
        for (RuleId r : kAllRules) {
            if (node->children.count(r)) continue;
            auto child = std::make_unique<SearchNode>();
            child->state = env.transition(node->state, r);
            child->parent = node;
            SearchNode* child_ptr = child.get();
            node->children.emplace(r, std::move(child));
            actions.push_back(r);
            node = child_ptr;
            path.push_back(node);
            break;
        }
    }

    // Simulation: uniformly random rules until fixpoint or depth cap.
    Rng rng(hash_combine(cfg.seed, hash_combine(0x726f6c6cull, iteration_index)));
    ReductionState current = node->state;
    for (int step = 0; step < cfg.rollout_depth; ++step) {
        if (env.is_terminal(current)) break;
        RuleId r = kAllRules[rng.below(kAllRules.size())];
        current = env.transition(current, r);
    }

    // Trajectory reward telescopes to the total drop from the root.
    const double traj = ReductionEnv::reward(root.state, current);

    // Backpropagation along the tree path.
    for (size_t i = 0; i < path.size(); ++i) {
        path[i]->visits += 1;
        if (i < actions.size()) {
            RuleId r = actions[i];
            int& nv = path[i]->edge_visits[r];
            double& q = path[i]->edge_value[r];
            nv += 1;
            q += (traj - q) / static_cast<double>(nv);
        }
    }

    return {traj, std::move(current)};
}

ClusterReduction mcts_reduce(const std::vector<Assertion>& cluster, const PipelineConfig& cfg,
                             const SearchConfig& scfg) {
    auto start = std::chrono::steady_clock::now();

    ReductionEnv env(cfg, scfg);
    SearchNode root;
    root.state = ReductionState::from(cluster, scfg.atom_metric);

    ClusterReduction result;
    result.assertions = cluster;
    std::vector<RuleId> best_history;
    double r_max = -std::numeric_limits<double>::infinity();
    int stale = 0;
    int iteration = 0;
    while (stale < scfg.patience && iteration < scfg.iteration_cap) {
        IterationResult it = one_iteration(root, env, scfg, static_cast<std::uint64_t>(iteration));
        ++iteration;
        if (it.trajectory_reward > r_max) {
            r_max = it.trajectory_reward;
            result.assertions = it.terminal.assertions;
            best_history = it.terminal.history;
            stale = 0;
        } else {
            ++stale;
        }
    }

    // Per-rule accounting along the extracted trajectory only, so report
    // deltas telescope to original minus reduced.
    ReductionState replay = root.state;
    for (RuleId r : best_history) {
        ReductionState next = env.transition(replay, r);
        if (next.content != replay.content) {
            result.rule_changes[r] += 1;
            result.rule_removed[r] += replay.assertion_count - next.assertion_count;
        }
        replay = std::move(next);
    }

    result.best_reward = std::max(0.0, r_max);
    result.iterations = iteration;
    result.certificate_incidents = env.certificate_incidents;
    result.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                              start)
                        .count();
    return result;
}

CorpusReduction reduce_corpus(const std::vector<std::vector<Assertion>>& clusters,
                              const PipelineConfig& cfg) {
    CorpusReduction out;
    out.per_cluster.resize(clusters.size());

    parallel_for(static_cast<int>(clusters.size()), cfg.workers, [&](int i) {
        SearchConfig scfg = SearchConfig::from(cfg);
        scfg.seed = hash_combine(cfg.seed, static_cast<std::uint64_t>(i));
        out.per_cluster[static_cast<size_t>(i)] =
            mcts_reduce(clusters[static_cast<size_t>(i)], cfg, scfg);
    });

    for (const auto& cr : out.per_cluster) {
        out.assertions.insert(out.assertions.end(), cr.assertions.begin(), cr.assertions.end());
        out.certificate_incidents += cr.certificate_incidents;
    }
    return out;
}

namespace {

std::vector<Assertion> run_to_fixpoint(const std::vector<Assertion>& cluster,
                                       const std::vector<RuleId>& schedule,
                                       const PipelineConfig& cfg) {
    SearchConfig scfg = SearchConfig::from(cfg);
    ReductionEnv env(cfg, scfg);
    ReductionState state = ReductionState::from(cluster, scfg.atom_metric);
    for (int round = 0; round < 64; ++round) {
        std::uint64_t before = state.content;
        for (RuleId r : schedule) state = env.transition(state, r);
        if (state.content == before) break;
    }
    return state.assertions;
}

}  // namespace

std::vector<Assertion> reduce_single_rule(const std::vector<Assertion>& cluster, RuleId r,
                                          const PipelineConfig& cfg) {
    return run_to_fixpoint(cluster, {r}, cfg);
}

std::vector<Assertion> reduce_round_robin(const std::vector<Assertion>& cluster,
                                          const PipelineConfig& cfg) {
    return run_to_fixpoint(cluster,
                           {RuleId::R1_IntraSimplify, RuleId::R2_PostConjunction,
                            RuleId::R3_PreDisjunction, RuleId::R4_EquivalenceDedup,
                            RuleId::R5_ImplicationPrune},
                           cfg);
}

}  // namespace arcane
