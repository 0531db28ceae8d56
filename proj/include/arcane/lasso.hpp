/* lasso.hpp -- ultimately periodic words as prefix + loop over AP letters
 *
 * Copyright (c) 2026 The Arcane Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace arcane {

/// One alphabet letter: a subset of the pool's atomic propositions,
/// stored as a bitmask (word-packed so pools over >64 APs work).
class Letter {
public:
    Letter() = default;
    explicit Letter(size_t nbits) : w_((nbits + 63) / 64, 0) {}

    bool get(size_t i) const { return (w_[i / 64] >> (i % 64)) & 1; }
    void set(size_t i, bool v) {
        if (v)
            w_[i / 64] |= std::uint64_t(1) << (i % 64);
        else
            w_[i / 64] &= ~(std::uint64_t(1) << (i % 64));
    }
    const std::vector<std::uint64_t>& words() const { return w_; }
    bool operator==(const Letter&) const = default;

private:
    std::vector<std::uint64_t> w_;
};

/// Finite prefix plus non-empty loop; stands for prefix . loop^omega.
struct Lasso {
    std::vector<Letter> prefix;
    std::vector<Letter> loop;

    size_t positions() const { return prefix.size() + loop.size(); }
    const Letter& letter_at(size_t pos) const {
        return pos < prefix.size() ? prefix[pos] : loop[pos - prefix.size()];
    }
    /// Quotient successor: steps d cycles with loop-back indexing.
    size_t advance(size_t pos, std::uint64_t d) const {
        const size_t p = prefix.size(), l = loop.size();
        if (pos < p) {
            if (pos + d < p) return pos + d;
            return p + (pos + d - p) % l;
        }
        return p + (pos - p + d) % l;
    }
    std::uint64_t content_hash() const;
};

/// A sampled set of lassos over a fixed, ordered AP list. Jaccard scores are
/// only meaningful over one shared pool, so the pool carries its identity.
struct LassoPool {
    std::vector<std::string> ap;
    std::vector<Lasso> lassos;
    std::uint64_t content_hash() const;
};

/// Deterministic sampling: prefix length uniform in [0, prefix_max], loop
/// length uniform in [1, loop_max], letters uniform over 2^|AP|. Duplicates
/// are replaced with fresh draws (bounded retries), so the pool usually holds
/// `count` distinct lassos.
LassoPool sample_lassos(std::vector<std::string> ap, int count, std::uint64_t seed,
                        int prefix_max = 4, int loop_max = 4);

/// Project a lasso onto a subset of the pool APs given by source indices.
Lasso project(const Lasso& lam, const std::vector<int>& src_indices);

/// Indices of `wanted` names inside `pool_ap` (-1 when absent).
std::vector<int> ap_indices(const std::vector<std::string>& pool_ap,
                            const std::vector<std::string>& wanted);

}  // namespace arcane
