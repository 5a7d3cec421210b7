#pragma once

#include <cstdint>
#include <random>

#include "scix/text.hpp"

namespace bench {

// Fixed seed so every run measures the same input.
inline scix::Text random_text(std::size_t n, std::uint64_t letters, std::uint64_t seed = 42) {
    std::mt19937_64 g(seed);
    std::uniform_int_distribution<std::uint64_t> d(1, letters);
    scix::Text t;
    t.sigma = letters + 1;
    t.syms.resize(n);
    for (std::size_t i = 0; i + 1 < n; ++i) t.syms[i] = static_cast<scix::Symbol>(d(g));
    t.syms[n - 1] = scix::kSentinel;
    return t;
}

}  // namespace bench
