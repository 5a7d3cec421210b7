#pragma once

// Slow, obviously-correct reference implementations. Used by the test suite
// and by `scix verify`; never by the index itself.

#include <cstddef>
#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "scix/text.hpp"

namespace scix::oracle {

/// Comparison-sort suffix array, 1-based.
std::vector<std::uint64_t> naive_sa(const Text& t);

/// LCP[i] = lcp of suffixes SA[i-1] and SA[i]; LCP[1] = 0. Index 0 unused.
std::vector<std::uint64_t> naive_lcp(const Text& t, const std::vector<std::uint64_t>& sa);

/// PLCP[p] for text positions p = 1..n (returned 0-based: element p-1).
std::vector<std::uint64_t> naive_plcp(const Text& t);

struct TreeChild {
    Symbol label;
    std::size_t lo, hi;
    friend bool operator==(const TreeChild&, const TreeChild&) = default;
};

struct TreeNode {
    std::size_t lo, hi;     // 1-based inclusive suffix-array interval
    std::size_t depth;      // string depth
    std::vector<TreeChild> children;
};

/// Suffix tree built from SA + LCP by the bottom-up lcp-interval scan.
struct SuffixTree {
    std::vector<std::uint64_t> sa;
    std::vector<std::uint64_t> lcp;
    std::vector<TreeNode> internal;  // root first, then preorder

    /// Depth-first balanced parentheses, leaves included, "(" = open.
    std::string parens() const;
    const TreeNode& root() const { return internal.front(); }
};

SuffixTree naive_suffix_tree(const Text& t);

struct RepeatRow {
    std::vector<Symbol> factor;
    std::size_t occ;
    friend auto operator<=>(const RepeatRow&, const RepeatRow&) = default;
};

/// Maximal repeats by enumerating every substring (sorted by factor).
std::vector<RepeatRow> brute_maximal_repeats(const Text& t);

/// Distinct length-k factors of T[1..n-1].
std::size_t brute_distinct_kmers(const Text& t, std::size_t k);

using MemTriple = std::tuple<std::size_t, std::size_t, std::size_t>;  // pos1, pos2, len

/// All maximal exact matches of length >= min_len between T1[1..n1-1] and T2[1..n2-1], sorted.
std::vector<MemTriple> brute_mems(const Text& t1, const Text& t2, std::size_t min_len);

}  // namespace scix::oracle
