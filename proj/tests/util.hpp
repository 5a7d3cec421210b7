#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "scix/text.hpp"

namespace testutil {

inline std::mt19937_64& rng() {
    static std::mt19937_64 g(0x5c1c5eedULL);
    return g;
}

inline std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng());
}

/// Random text of n-1 letters over symbols 1..letters, plus the sentinel.
inline scix::Text random_text(std::size_t n, std::uint64_t letters) {
    scix::Text t;
    t.sigma = letters + 1;
    for (std::size_t i = 0; i + 1 < n; ++i) t.syms.push_back(static_cast<scix::Symbol>(uniform(1, letters)));
    t.syms.push_back(scix::kSentinel);
    return t;
}

/// Text from a string where 'a'.. map to 1.., and '$' is appended.
inline scix::Text text_of(const std::string& s) { return scix::text_from_bytes(s); }

/// Calls f(Text) for every string of exactly `len` letters over `letters` symbols.
template <class F>
void for_each_string(std::size_t len, std::uint64_t letters, F&& f) {
    scix::Text t;
    t.sigma = letters + 1;
    t.syms.assign(len + 1, 1);
    t.syms[len] = scix::kSentinel;
    while (true) {
        f(static_cast<const scix::Text&>(t));
        std::size_t p = 0;
        while (p < len && t.syms[p] == letters) t.syms[p++] = 1;
        if (p == len) break;
        ++t.syms[p];
    }
}

}  // namespace testutil
