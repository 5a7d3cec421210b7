#pragma once

// Suffix arrays by induced sorting, and BWTs derived from them.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "scix/text.hpp"

namespace scix {

/// 1-based suffix start positions in lexicographic order.
using SuffixArray = std::vector<std::uint64_t>;
/// BWT over text symbols; the sentinel is symbol 0.
using BwtString = std::vector<Symbol>;

/// 0-based suffix array of s by SA-IS. The last symbol of s must be unique and
/// strictly smaller than every other symbol; all symbols must be < k.
template <class Sym>
std::vector<std::int64_t> sais(std::span<const Sym> s, std::size_t k);

SuffixArray sa_build(const Text& t);

/// BWT[i] = T[A[i]-1] when A[i] > 1, else the sentinel.
BwtString bwt_from_sa(const Text& t, const SuffixArray& sa);

/// Rotation-sort BWT (quadratic; reference implementation).
BwtString bwt_naive(const Text& t);

/// Rotation-sort BWT of an arbitrary integer sequence (no sentinel requirement).
std::vector<std::uint64_t> bwt_rotations(std::span<const std::uint64_t> s);

}  // namespace scix
