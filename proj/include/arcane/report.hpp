/* report.hpp -- reduction report assembly and emission
 *
 * Copyright (c) 2026 The Arcane Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "arcane/config.hpp"

namespace arcane {

struct ReductionReport {
    std::string corpus_name;
    int original_count = 0;
    int reduced_count = 0;
    double reduction_ratio = 0.0;  // 1 - reduced/original
    int atoms_before = 0;
    int atoms_after = 0;
    double processing_ms = 0.0;  // classify + reduce wall clock

    std::map<std::string, int> rule_applications;  // best-path changes per rule
    std::map<std::string, int> rule_removed;       // assertions removed per rule

    struct ClusterDetail {
        int index = 0;
        int size_before = 0;
        int size_after = 0;
        double reward = 0.0;
        int iterations = 0;
        double millis = 0.0;
    };
    std::vector<ClusterDetail> clusters;

    int coarse_groups = 0;
    std::uint64_t acceptance_calls = 0;
    std::uint64_t truth_table_pairs = 0;
    std::uint64_t lasso_pairs = 0;
    std::uint64_t nl_only_pairs = 0;

    int certificate_incidents = 0;
    bool end_to_end_certified = false;
    int certificate_samples = 0;
    int certificate_failures = 0;
    std::vector<std::string> falsum_flagged;

    // Config echo.
    double alpha = 0.0, beta = 0.0, threshold = 0.0;
    int lasso_samples = 0, workers = 0, mcts_iterations = 0, patience = 0;
    std::uint64_t seed = 0;
    std::string embedder;
};

/// "76.2%" formatting of a ratio in [0, 1].
std::string format_ratio(double ratio);

/// Stable-schema JSON (keys in fixed order).
std::string report_to_json(const ReductionReport& r);

/// Human-readable table: N original / reduced / ratio and processing time.
std::string report_to_text(const ReductionReport& r);

/// format is "json" or "text"; throws CorpusError on I/O failure.
void emit_report(const ReductionReport& r, const std::string& format, const std::string& path);

}  // namespace arcane
