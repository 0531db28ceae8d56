/* pipeline.hpp -- the end-to-end reduce driver
 *
 * Copyright (c) 2026 The Arcane Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "arcane/cluster.hpp"
#include "arcane/config.hpp"
#include "arcane/corpus.hpp"
#include "arcane/mcts.hpp"
#include "arcane/report.hpp"

namespace arcane {

struct PipelineResult {
    Corpus reduced;
    ReductionReport report;
    ClusterSet clusters;
};

/// classify -> reduce per cluster -> end-to-end certificate -> report.
PipelineResult run_pipeline(const Corpus& corpus, const PipelineConfig& cfg, Embedder& embedder);
PipelineResult run_pipeline(const Corpus& corpus, const PipelineConfig& cfg);

/// Oracle equivalence of two corpora on shared sampled lassos.
Certificate check_corpora(const Corpus& a, const Corpus& b, int samples, std::uint64_t seed);

}  // namespace arcane
