/* cluster.hpp -- fused similarity, DBSCAN, and the two-tier classifier
 *
 * Copyright (c) 2026 The Arcane Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "arcane/assertion.hpp"
#include "arcane/config.hpp"
#include "arcane/embed.hpp"

namespace arcane {

/// Dense symmetric matrix with unit-free doubles.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(int n, double fill = 0.0)
        : n_(n), v_(static_cast<size_t>(n) * static_cast<size_t>(n), fill) {}

    int size() const { return n_; }
    double at(int i, int j) const { return v_[static_cast<size_t>(i) * n_ + j]; }
    void set(int i, int j, double x) {
        v_[static_cast<size_t>(i) * n_ + j] = x;
        v_[static_cast<size_t>(j) * n_ + i] = x;
    }

private:
    int n_ = 0;
    std::vector<double> v_;
};

struct SimilarityMatrix {
    std::vector<std::string> ids;
    SymMatrix s_nl;
    SymMatrix s_lasso;
    SymMatrix s_fused;
    SymMatrix d;  // 1 - s_fused
    std::vector<std::vector<bool>> has_lasso;
};

struct ClusterSet {
    std::vector<std::vector<std::string>> clusters;
    bool noise_as_singletons = true;

    size_t total_members() const;
    std::string serialize() const;
};

struct ClassifyStats {
    std::uint64_t acceptance_calls = 0;
    std::uint64_t truth_table_pairs = 0;
    std::uint64_t lasso_pairs = 0;
    std::uint64_t nl_only_pairs = 0;
    int coarse_groups = 0;
};

/// Connected components of the graph with an edge where clamped cosine
/// similarity is at least tau. Groups are ordered by smallest member index.
std::vector<std::vector<int>> coarse_partition(const std::vector<EmbeddingVector>& vectors,
                                               double tau);

/// Fused score alpha*s_nl + beta*s_lasso and distance 1 - s. Pairs without a
/// lasso score (mask false) fall back to s_nl alone. Throws ContractError
/// unless alpha + beta == 1 within 1e-9.
SimilarityMatrix fuse(std::vector<std::string> ids, const SymMatrix& s_nl,
                      const SymMatrix& s_lasso, const std::vector<std::vector<bool>>& has_lasso,
                      double alpha, double beta);

/// DBSCAN over the precomputed distance matrix (neighborhood d <= eps,
/// self-inclusive counts). Noise points become singleton clusters. Iteration
/// order is ascending index, so output is deterministic.
ClusterSet dbscan(const SimilarityMatrix& m, double eps, int min_pts);

struct ClassifyResult {
    ClusterSet clusters;
    ClassifyStats stats;
};

/// Two-tier classification: coarse semantic partition, then per-group fused
/// similarity (truth-table Jaccard fast path for propositional pairs,
/// shared-pool lasso Jaccard otherwise) and DBSCAN.
ClassifyResult classify(const std::vector<Assertion>& corpus, const PipelineConfig& cfg,
                        Embedder& embedder);

/// Run fn(i) for i in [0, n) on up to `workers` threads.
void parallel_for(int n, int workers, const std::function<void(int)>& fn);

}  // namespace arcane
