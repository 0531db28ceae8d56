/* lasso.cpp
 *
 * Copyright (c) 2026 The Arcane Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "arcane/lasso.hpp"

#include <set>

#include "arcane/common.hpp"

namespace arcane {

std::uint64_t Lasso::content_hash() const {
    std::uint64_t h = fnv1a64("lasso");
    auto mix = [&](const std::vector<Letter>& letters) {
        h = hash_combine(h, letters.size());
        for (const auto& l : letters)
            for (std::uint64_t w : l.words()) h = hash_combine(h, w);
    };
    mix(prefix);
    mix(loop);
    return h;
}

std::uint64_t LassoPool::content_hash() const {
    std::uint64_t h = fnv1a64("pool");
    for (const auto& name : ap) h = hash_combine(h, fnv1a64(name));
    for (const auto& lam : lassos) h = hash_combine(h, lam.content_hash());
    return h;
}

LassoPool sample_lassos(std::vector<std::string> ap, int count, std::uint64_t seed,
                        int prefix_max, int loop_max) {
    LassoPool pool;
    pool.ap = std::move(ap);
    const size_t nap = pool.ap.size();

    Rng rng(seed);
    auto draw_letter = [&] {
        Letter l(nap == 0 ? 1 : nap);
        for (size_t i = 0; i < nap; ++i) l.set(i, rng.below(2) == 1);
        return l;
    };
    auto draw = [&] {
        Lasso lam;
        const auto plen = rng.between(0, static_cast<std::uint64_t>(prefix_max));
        const auto llen = rng.between(1, static_cast<std::uint64_t>(loop_max));
        lam.prefix.reserve(plen);
        for (std::uint64_t i = 0; i < plen; ++i) lam.prefix.push_back(draw_letter());
        lam.loop.reserve(llen);
        for (std::uint64_t i = 0; i < llen; ++i) lam.loop.push_back(draw_letter());
        return lam;
    };

    std::set<std::uint64_t> seen;
    int attempts = 0;
    const int max_attempts = count * 10 + 100;
    while (static_cast<int>(pool.lassos.size()) < count && attempts < max_attempts) {
        ++attempts;
        Lasso lam = draw();
        if (seen.insert(lam.content_hash()).second) pool.lassos.push_back(std::move(lam));
    }
    // Tiny alphabets can exhaust the distinct-lasso space; top up with
    // duplicates so the pool size contract holds.
    Rng filler(hash_combine(seed, 0x66696c6cull));
    while (static_cast<int>(pool.lassos.size()) < count && !pool.lassos.empty()) {
        pool.lassos.push_back(pool.lassos[filler.below(pool.lassos.size())]);
    }
    return pool;
}

Lasso project(const Lasso& lam, const std::vector<int>& src_indices) {
    auto conv = [&](const Letter& l) {
        Letter out(src_indices.empty() ? 1 : src_indices.size());
        for (size_t i = 0; i < src_indices.size(); ++i) {
            if (src_indices[i] >= 0) out.set(i, l.get(static_cast<size_t>(src_indices[i])));
        }
        return out;
    };
    Lasso out;
    out.prefix.reserve(lam.prefix.size());
    for (const auto& l : lam.prefix) out.prefix.push_back(conv(l));
    out.loop.reserve(lam.loop.size());
    for (const auto& l : lam.loop) out.loop.push_back(conv(l));
    return out;
}

std::vector<int> ap_indices(const std::vector<std::string>& pool_ap,
                            const std::vector<std::string>& wanted) {
    std::vector<int> idx(wanted.size(), -1);
    for (size_t i = 0; i < wanted.size(); ++i) {
        for (size_t j = 0; j < pool_ap.size(); ++j) {
            if (pool_ap[j] == wanted[i]) {
                idx[i] = static_cast<int>(j);
                break;
            }
        }
    }
    return idx;
}

}  // namespace arcane
