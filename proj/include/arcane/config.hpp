/* config.hpp -- pipeline configuration
 *
 * Copyright (c) 2026 The Arcane Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <string>

namespace arcane {

enum class AtomMetric { Occurrences, Distinct };

struct PipelineConfig {
    double alpha = 0.4;            // linguistic weight
    double beta = 0.6;             // lasso weight
    double threshold = 0.85;       // unified similarity threshold
    int lasso_samples = 500;
    int certify_samples = 500;
    std::uint64_t seed = 1;
    int workers = 64;
    int mcts_iterations = 200;
    int patience = 3;
    int max_depth = 12;
    int rollout_depth = 6;
    double exploration = std::sqrt(2.0);
    bool coarse_partition = true;
    int truth_table_atom_cap = 20;
    int prefix_max = 4;
    int loop_max = 4;
    AtomMetric atom_metric = AtomMetric::Occurrences;
    std::string embedder = "hash";  // "hash" or a service base URL
};

}  // namespace arcane
