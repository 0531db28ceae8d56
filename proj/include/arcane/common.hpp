/* common.hpp -- shared hashing, deterministic RNG, and error types
 *
 * Copyright (c) 2026 The Arcane Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace arcane {

// 64-bit FNV-1a. Used for canonical keys, content ids, and seed derivation;
// must stay stable across platforms and runs.
inline std::uint64_t fnv1a64(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ull) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
    a ^= b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2);
    return a;
}

/// First 16 hex digits of the FNV-1a hash; suffix for generated assertion ids.
std::string hash16(std::string_view s);

// SplitMix64. The standard library distributions are not bit-stable across
// implementations, so all sampling goes through this generator plus the
// multiply-shift bounded draw below.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform draw in [0, n); n must be positive.
    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }

    /// Uniform draw in [lo, hi] inclusive.
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
        return lo + below(hi - lo + 1);
    }

    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, int line, int col)
        : std::runtime_error(msg + " at line " + std::to_string(line) + ", column " +
                             std::to_string(col)),
          line(line),
          col(col) {}
    int line;
    int col;
};

struct ContractError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CorpusError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmbedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace arcane
