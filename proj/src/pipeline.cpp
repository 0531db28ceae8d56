/* pipeline.cpp
 *
 * Copyright (c) 2026 The Arcane Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "arcane/pipeline.hpp"

#include <chrono>
#include <map>

#include "arcane/common.hpp"

namespace arcane {

PipelineResult run_pipeline(const Corpus& corpus, const PipelineConfig& cfg, Embedder& embedder) {
    PipelineResult result;
    ReductionReport& rep = result.report;
    rep.corpus_name = corpus.name;
    rep.original_count = static_cast<int>(corpus.parsed.size());
    rep.atoms_before = set_atom_count(corpus.parsed, cfg.atom_metric);
    rep.alpha = cfg.alpha;
    rep.beta = cfg.beta;
    rep.threshold = cfg.threshold;
    rep.lasso_samples = cfg.lasso_samples;
    rep.seed = cfg.seed;
    rep.workers = cfg.workers;
    rep.mcts_iterations = cfg.mcts_iterations;
    rep.patience = cfg.patience;
    rep.embedder = cfg.embedder;
    rep.certificate_samples = cfg.certify_samples;

    const auto t0 = std::chrono::steady_clock::now();

    ClassifyResult classified = classify(corpus.parsed, cfg, embedder);
    result.clusters = classified.clusters;
    rep.coarse_groups = classified.stats.coarse_groups;
    rep.acceptance_calls = classified.stats.acceptance_calls;
    rep.truth_table_pairs = classified.stats.truth_table_pairs;
    rep.lasso_pairs = classified.stats.lasso_pairs;
    rep.nl_only_pairs = classified.stats.nl_only_pairs;

    std::map<std::string, const Assertion*> by_id;
    for (const auto& a : corpus.parsed) by_id[a.id] = &a;
    std::vector<std::vector<Assertion>> clusters;
    for (const auto& cluster : classified.clusters.clusters) {
        std::vector<Assertion> members;
        members.reserve(cluster.size());
        for (const auto& id : cluster) members.push_back(*by_id.at(id));
        clusters.push_back(std::move(members));
    }

    CorpusReduction reduction = reduce_corpus(clusters, cfg);

    const auto t1 = std::chrono::steady_clock::now();
    rep.processing_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    rep.reduced_count = static_cast<int>(reduction.assertions.size());
    rep.atoms_after = set_atom_count(reduction.assertions, cfg.atom_metric);
    rep.reduction_ratio =
        rep.original_count == 0
            ? 0.0
            : 1.0 - static_cast<double>(rep.reduced_count) / rep.original_count;
    rep.certificate_incidents = reduction.certificate_incidents;

    for (size_t i = 0; i < reduction.per_cluster.size(); ++i) {
        const auto& cr = reduction.per_cluster[i];
        ReductionReport::ClusterDetail detail;
        detail.index = static_cast<int>(i);
        detail.size_before = static_cast<int>(clusters[i].size());
        detail.size_after = static_cast<int>(cr.assertions.size());
        detail.reward = cr.best_reward;
        detail.iterations = cr.iterations;
        detail.millis = cr.millis;
        rep.clusters.push_back(detail);
        for (const auto& [r, count] : cr.rule_changes) rep.rule_applications[rule_name(r)] += count;
        for (const auto& [r, count] : cr.rule_removed) rep.rule_removed[rule_name(r)] += count;
    }

    // End-to-end certificate: the reduced corpus conjunction must agree with
    // the original on shared sampled lassos.
    Certificate cert = certify(corpus.parsed, reduction.assertions, cfg.certify_samples,
                               hash_combine(cfg.seed, 0x70697065ull));
    rep.end_to_end_certified = cert.ok;
    rep.certificate_failures = cert.failures;

    for (const auto& a : reduction.assertions) {
        if (normalize(a).consequent.head->is_const(false)) rep.falsum_flagged.push_back(a.id);
    }

    result.reduced = corpus_from_assertions(corpus.name + "_reduced", reduction.assertions);
    return result;
}

PipelineResult run_pipeline(const Corpus& corpus, const PipelineConfig& cfg) {
    auto embedder = make_embedder(cfg.embedder);
    return run_pipeline(corpus, cfg, *embedder);
}

Certificate check_corpora(const Corpus& a, const Corpus& b, int samples, std::uint64_t seed) {
    return certify(a.parsed, b.parsed, samples, seed);
}

}  // namespace arcane
