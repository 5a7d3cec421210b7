#pragma once

// Sequence analyses on top of the node enumerators.

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <vector>

#include "scix/fmindex.hpp"

namespace scix {

struct RepeatRow {
    Interval interval;  // suffix-array interval of the factor
    std::size_t length;
    std::size_t occ;
    friend auto operator<=>(const RepeatRow&, const RepeatRow&) = default;
};

struct RepeatReport {
    std::vector<RepeatRow> rows;  // sorted by (length, occ, interval)
};

/// Factors that occur at least twice and are both left- and right-maximal.
RepeatReport maximal_repeats(const FmIndex& ix, std::size_t min_len = 1);

/// Symbols of a reported factor.
std::vector<Symbol> repeat_factor(const FmIndex& ix, const RepeatRow& row);

/// Number of distinct length-k factors of T[1..n-1].
std::size_t distinct_kmers(const FmIndex& ix, std::size_t k);

/// Element k-1 holds distinct_kmers(ix, k) for k = 1..kmax, from one traversal.
std::vector<std::size_t> kmer_spectrum(const FmIndex& ix, std::size_t kmax);

struct MemTriple {
    std::size_t pos1, pos2, len;
    friend auto operator<=>(const MemTriple&, const MemTriple&) = default;
};

struct MemOptions {
    std::size_t min_len = 1;
    /// Stop after this many triples (0 = unlimited).
    std::size_t max_pairs = 0;
};

struct MemReport {
    std::vector<MemTriple> mems;  // sorted
    bool truncated = false;
    std::size_t hybrid_nodes = 0;
};

/// Maximal exact matches between T1[1..n1-1] and T2[1..n2-1]. Both texts must
/// use the same symbol numbering.
MemReport maximal_exact_matches(const Text& t1, const Text& t2, const MemOptions& opt = {});

// TSV output. Factor strings go through the index alphabet.
void write_repeats_tsv(std::ostream& os, const FmIndex& ix, const RepeatReport& rep, bool with_strings = true,
                       bool header = true);
void write_kmers_tsv(std::ostream& os, std::size_t first_k, const std::vector<std::size_t>& counts,
                     bool header = true);
void write_mems_tsv(std::ostream& os, const MemReport& rep, bool header = true);

}  // namespace scix
