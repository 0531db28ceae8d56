/* cluster.cpp
 *
 * Copyright (c) 2026 The Arcane Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "arcane/cluster.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <thread>

#include "arcane/buchi.hpp"
#include "arcane/common.hpp"
#include "arcane/sat.hpp"
#include "arcane/temporal.hpp"

namespace arcane {

size_t ClusterSet::total_members() const {
    size_t n = 0;
    for (const auto& c : clusters) n += c.size();
    return n;
}

std::string ClusterSet::serialize() const {
    std::string out;
    for (const auto& c : clusters) {
        out += '[';
        for (const auto& id : c) {
            out += id;
            out += ',';
        }
        out += ']';
    }
    return out;
}

void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
    if (n <= 0) return;
    const int nthreads = std::max(1, std::min(workers, n));
    if (nthreads == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                int i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

std::vector<std::vector<int>> coarse_partition(const std::vector<EmbeddingVector>& vectors,
                                               double tau) {
    const int n = static_cast<int>(vectors.size());
    std::vector<int> parent(static_cast<size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    };
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double s = std::max(0.0, cosine(vectors[static_cast<size_t>(i)],
                                            vectors[static_cast<size_t>(j)]));
            if (s >= tau) {
                int a = find(i), b = find(j);
                if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
            }
        }
    }
    std::map<int, std::vector<int>> by_root;
    for (int i = 0; i < n; ++i) by_root[find(i)].push_back(i);
    std::vector<std::vector<int>> groups;
    groups.reserve(by_root.size());
    for (auto& [root, members] : by_root) groups.push_back(std::move(members));
    return groups;
}

SimilarityMatrix fuse(std::vector<std::string> ids, const SymMatrix& s_nl,
                      const SymMatrix& s_lasso, const std::vector<std::vector<bool>>& has_lasso,
                      double alpha, double beta) {
    if (std::fabs(alpha + beta - 1.0) > 1e-9)
        throw ContractError("fuse: similarity weights must sum to 1");
    const int n = s_nl.size();
    SimilarityMatrix m;
    m.ids = std::move(ids);
    m.s_nl = s_nl;
    m.s_lasso = s_lasso;
    m.s_fused = SymMatrix(n);
    m.d = SymMatrix(n);
    m.has_lasso = has_lasso;
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            double s;
            if (i == j) {
                s = 1.0;
            } else if (has_lasso.empty() || has_lasso[static_cast<size_t>(i)][static_cast<size_t>(j)]) {
                s = alpha * s_nl.at(i, j) + beta * s_lasso.at(i, j);
            } else {
                s = s_nl.at(i, j);
            }
            m.s_fused.set(i, j, s);
            m.d.set(i, j, 1.0 - s);
        }
    }
    return m;
}

ClusterSet dbscan(const SimilarityMatrix& m, double eps, int min_pts) {
    const int n = m.d.size();
    auto neighbors = [&](int p) {
        std::vector<int> out;
        for (int q = 0; q < n; ++q)
            if (m.d.at(p, q) <= eps) out.push_back(q);  // includes p itself
        return out;
    };

    constexpr int kUnassigned = -1;
    constexpr int kNoise = -2;
    std::vector<int> label(static_cast<size_t>(n), kUnassigned);
    std::vector<bool> visited(static_cast<size_t>(n), false);
    int next_cluster = 0;

    for (int p = 0; p < n; ++p) {
        if (visited[static_cast<size_t>(p)]) continue;
        visited[static_cast<size_t>(p)] = true;
        std::vector<int> nb = neighbors(p);
        if (static_cast<int>(nb.size()) < min_pts) {
            label[static_cast<size_t>(p)] = kNoise;
            continue;
        }
        const int c = next_cluster++;
        label[static_cast<size_t>(p)] = c;
        std::deque<int> seeds(nb.begin(), nb.end());
        while (!seeds.empty()) {
            int q = seeds.front();
            seeds.pop_front();
            if (!visited[static_cast<size_t>(q)]) {
                visited[static_cast<size_t>(q)] = true;
                std::vector<int> qn = neighbors(q);
                if (static_cast<int>(qn.size()) >= min_pts)
                    seeds.insert(seeds.end(), qn.begin(), qn.end());
            }
            if (label[static_cast<size_t>(q)] == kUnassigned || label[static_cast<size_t>(q)] == kNoise)
                label[static_cast<size_t>(q)] = c;
        }
    }

    ClusterSet set;
    set.noise_as_singletons = true;
    set.clusters.resize(static_cast<size_t>(next_cluster));
    for (int i = 0; i < n; ++i) {
        if (label[static_cast<size_t>(i)] >= 0)
            set.clusters[static_cast<size_t>(label[static_cast<size_t>(i)])].push_back(
                m.ids[static_cast<size_t>(i)]);
    }
    for (int i = 0; i < n; ++i) {
        if (label[static_cast<size_t>(i)] == kNoise)
            set.clusters.push_back({m.ids[static_cast<size_t>(i)]});
    }
    return set;
}

namespace {

struct BehaviorData {
    std::optional<AcceptanceVector> vec;  // lasso path
    bool vec_attempted = false;
    bool propositional = false;
    std::set<std::string> atoms;
};

}  // namespace

ClassifyResult classify(const std::vector<Assertion>& corpus, const PipelineConfig& cfg,
                        Embedder& embedder) {
    ClassifyResult result;
    if (corpus.empty()) return result;

    const std::uint64_t calls_before = acceptance_call_count();

    std::vector<NlSentence> sentences;
    sentences.reserve(corpus.size());
    for (const auto& a : corpus) sentences.push_back(render_nl(a));
    std::vector<EmbeddingVector> vectors = embedder.embed(sentences);

    std::vector<std::vector<int>> groups;
    if (cfg.coarse_partition) {
        groups = coarse_partition(vectors, cfg.threshold);
    } else {
        groups.emplace_back(corpus.size());
        std::iota(groups.back().begin(), groups.back().end(), 0);
    }
    result.stats.coarse_groups = static_cast<int>(groups.size());

    for (const auto& group : groups) {
        const int g = static_cast<int>(group.size());
        if (g == 1) {
            result.clusters.clusters.push_back({corpus[static_cast<size_t>(group[0])].id});
            continue;
        }

        // Shared lasso pool over the union of the group's APs, seeded from
        // (global seed, sorted AP list).
        std::set<std::string> union_atoms;
        for (int idx : group) {
            auto atoms = atomic_propositions(corpus[static_cast<size_t>(idx)]);
            union_atoms.insert(atoms.begin(), atoms.end());
        }
        std::vector<std::string> pool_ap(union_atoms.begin(), union_atoms.end());
        std::uint64_t pool_seed = cfg.seed;
        for (const auto& ap : pool_ap) pool_seed = hash_combine(pool_seed, fnv1a64(ap));
        LassoPool pool = sample_lassos(pool_ap, cfg.lasso_samples, pool_seed, cfg.prefix_max,
                                       cfg.loop_max);

        // Per-assertion behavioral data; acceptance vectors in parallel.
        std::vector<BehaviorData> behavior(static_cast<size_t>(g));
        parallel_for(g, cfg.workers, [&](int k) {
            const Assertion& a = corpus[static_cast<size_t>(group[static_cast<size_t>(k)])];
            BehaviorData& b = behavior[static_cast<size_t>(k)];
            b.propositional = a.kind == AssertionKind::Propositional;
            b.atoms = atomic_propositions(a);
            if (b.propositional) return;  // pairwise fast path decides later
            b.vec_attempted = true;
            auto formula = to_ltl(a);
            if (!formula) return;
            auto aut = ltl_to_buchi(*formula);
            if (!aut) return;
            b.vec = acceptance_vector(*aut, pool);
        });

        // Propositional assertions fall back to automata when paired with a
        // temporal one; build those vectors on demand (sequentially, rare).
        auto ensure_vec = [&](int k) -> const std::optional<AcceptanceVector>& {
            BehaviorData& b = behavior[static_cast<size_t>(k)];
            if (!b.vec_attempted) {
                b.vec_attempted = true;
                const Assertion& a = corpus[static_cast<size_t>(group[static_cast<size_t>(k)])];
                auto formula = to_ltl(a);
                if (formula) {
                    auto aut = ltl_to_buchi(*formula);
                    if (aut) b.vec = acceptance_vector(*aut, pool);
                }
            }
            return b.vec;
        };

        SymMatrix s_nl(g), s_lasso(g);
        std::vector<std::vector<bool>> has_lasso(static_cast<size_t>(g),
                                                 std::vector<bool>(static_cast<size_t>(g), false));
        std::vector<std::string> ids;
        ids.reserve(static_cast<size_t>(g));
        for (int idx : group) ids.push_back(corpus[static_cast<size_t>(idx)].id);

        for (int i = 0; i < g; ++i) {
            s_nl.set(i, i, 1.0);
            s_lasso.set(i, i, 1.0);
            has_lasso[static_cast<size_t>(i)][static_cast<size_t>(i)] = true;
            for (int j = i + 1; j < g; ++j) {
                double nl = std::max(
                    0.0, cosine(vectors[static_cast<size_t>(group[static_cast<size_t>(i)])],
                                vectors[static_cast<size_t>(group[static_cast<size_t>(j)])]));
                s_nl.set(i, j, nl);

                const BehaviorData& bi = behavior[static_cast<size_t>(i)];
                const BehaviorData& bj = behavior[static_cast<size_t>(j)];
                std::set<std::string> pair_atoms = bi.atoms;
                pair_atoms.insert(bj.atoms.begin(), bj.atoms.end());

                if (bi.propositional && bj.propositional &&
                    static_cast<int>(pair_atoms.size()) <= cfg.truth_table_atom_cap) {
                    // 2^N enumeration over the pair's atoms.
                    std::vector<std::string> atom_list(pair_atoms.begin(), pair_atoms.end());
                    const Assertion& ai = corpus[static_cast<size_t>(group[static_cast<size_t>(i)])];
                    const Assertion& aj = corpus[static_cast<size_t>(group[static_cast<size_t>(j)])];
                    auto ti = truth_table_sat_set(normalize(ai).consequent.head, atom_list);
                    auto tj = truth_table_sat_set(normalize(aj).consequent.head, atom_list);
                    if (ti && tj) {
                        s_lasso.set(i, j, sat_set_jaccard(*ti, *tj));
                        has_lasso[static_cast<size_t>(i)][static_cast<size_t>(j)] = true;
                        has_lasso[static_cast<size_t>(j)][static_cast<size_t>(i)] = true;
                        ++result.stats.truth_table_pairs;
                        continue;
                    }
                }

                const auto& vi = ensure_vec(i);
                const auto& vj = ensure_vec(j);
                if (vi && vj) {
                    s_lasso.set(i, j, jaccard(*vi, *vj));
                    has_lasso[static_cast<size_t>(i)][static_cast<size_t>(j)] = true;
                    has_lasso[static_cast<size_t>(j)][static_cast<size_t>(i)] = true;
                    ++result.stats.lasso_pairs;
                } else {
                    ++result.stats.nl_only_pairs;
                }
            }
        }

        SimilarityMatrix m = fuse(std::move(ids), s_nl, s_lasso, has_lasso, cfg.alpha, cfg.beta);
        ClusterSet local = dbscan(m, 1.0 - cfg.threshold, 2);
        for (auto& cluster : local.clusters) result.clusters.clusters.push_back(std::move(cluster));
    }

    result.stats.acceptance_calls = acceptance_call_count() - calls_before;
    return result;
}

}  // namespace arcane
