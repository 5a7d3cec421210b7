#pragma once

// Levelwise (pointerless) wavelet tree over an integer alphabet [0..sigma).
//
// Level l holds one bitvector of length n: the concatenation, in prefix
// order, of the node bitvectors of depth l. Node boundaries are recovered
// from rank queries during descent, so no per-node records are stored.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "scix/bitvec.hpp"

namespace scix {

class WaveletTree {
public:
    struct DistinctEntry {
        std::uint64_t symbol;
        std::size_t rank_before;  // occurrences of symbol strictly before the range
        std::size_t freq;         // occurrences inside the range (> 0)

        friend bool operator==(const DistinctEntry&, const DistinctEntry&) = default;
    };

    struct RangeCounts {
        std::size_t less;   // symbols < c in the range
        std::size_t equal;  // occurrences of c in the range
    };

    WaveletTree() = default;
    WaveletTree(std::span<const std::uint64_t> seq, std::uint64_t sigma);
    WaveletTree(std::span<const std::uint32_t> seq, std::uint64_t sigma);

    std::size_t size() const noexcept { return n_; }
    std::uint64_t sigma() const noexcept { return sigma_; }
    unsigned levels() const noexcept { return static_cast<unsigned>(levels_.size()); }

    /// Symbol at 1-based position i.
    std::uint64_t access(std::size_t i) const;
    /// Occurrences of c in [1..i]. Symbols >= sigma have rank 0.
    std::size_t rank(std::uint64_t c, std::size_t i) const;
    /// Position of the j-th occurrence of c.
    std::size_t select(std::uint64_t c, std::size_t j) const;

    /// Symbol at position i together with its rank at i (inclusive), in one descent.
    std::pair<std::uint64_t, std::size_t> access_rank(std::size_t i) const;

    /// Counts of symbols < c and == c in [i..j]; an empty range (i > j) yields zeros.
    RangeCounts range_counts(std::size_t i, std::size_t j, std::uint64_t c) const;

    /// Every distinct symbol of [i..j] in increasing order, via pruned descent.
    /// Results are appended to `out`. Empty range (i > j) appends nothing.
    void range_distinct(std::size_t i, std::size_t j, std::vector<DistinctEntry>& out) const;
    std::vector<DistinctEntry> range_distinct(std::size_t i, std::size_t j) const {
        std::vector<DistinctEntry> out;
        range_distinct(i, j, out);
        return out;
    }

    std::vector<std::uint64_t> to_vector() const;

    std::size_t size_in_bits() const noexcept;

    void save(io::Writer& w) const;
    static WaveletTree load(io::Reader& r);

private:
    void build(std::vector<std::uint64_t> cur);
    void distinct_rec(unsigned level, std::size_t s, std::size_t e, std::uint64_t prefix, std::size_t a,
                      std::size_t b, std::vector<DistinctEntry>& out) const;
    bool bit_of(std::uint64_t c, unsigned level) const noexcept {
        return (c >> (levels_.size() - 1 - level)) & 1U;
    }

    std::size_t n_ = 0;
    std::uint64_t sigma_ = 1;
    std::vector<BitVector> levels_;
};

}  // namespace scix
