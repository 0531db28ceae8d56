/* common.cpp
 *
 * Copyright (c) 2026 The Arcane Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "arcane/common.hpp"

namespace arcane {

std::string hash16(std::string_view s) {
    static const char digits[] = "0123456789abcdef";
    std::uint64_t h = fnv1a64(s);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

}  // namespace arcane
