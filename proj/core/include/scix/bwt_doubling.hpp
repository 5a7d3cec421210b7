#pragma once

// BWT construction by block doubling.
//
// T' is T padded with sentinels to a multiple of B. SA-IS gives the BWT of T'
// read as a string of B-symbol blocks. Each level induces the BWT of the text
// shifted by half a block and merges the two through a joint traversal of
// their hybrid suffix-tree nodes. Keeping the right half of every merged block
// yields the BWT over blocks of half the size. At block size 1 the padded
// sentinels form one cluster of ranks and are stripped.
//
// All BWTs here are of rotations (cyclic strings).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "scix/bitvec.hpp"
#include "scix/enumerate.hpp"
#include "scix/sufsort.hpp"

namespace scix {

struct DoublingOptions {
    /// Overrides the automatic initial block size (must be a power of two).
    std::optional<std::size_t> block_size;
    /// Build each shifted BWT directly with SA-IS instead of inducing it.
    bool rebuild_rotated = false;
    /// Compare every level against direct construction (slow).
    bool cross_check = false;
};

struct DoublingPlan {
    std::size_t n = 0;
    std::size_t block = 1;     // B
    std::size_t padded = 0;    // n'
    std::vector<std::size_t> levels;            // B, B/2, ..., 2
    std::vector<std::uint64_t> block_sigma;     // sigma^b per level
    bool fallback = false;     // B < 2: plain SA-IS
};

struct DoublingStats {
    DoublingPlan plan;
    std::vector<JointStats> merges;
    std::size_t cross_checks = 0;
};

/// B = largest power of two <= floor(log_sigma(n) / 3), unless forced.
DoublingPlan plan_doubling(std::size_t n, std::uint64_t sigma, std::optional<std::size_t> forced = std::nullopt);

/// sigma^e, or CapacityError when it does not fit in 64 bits.
std::uint64_t checked_pow(std::uint64_t sigma, std::size_t e);

/// Blocks of b symbols (base-sigma, first symbol most significant) of `padded`
/// rotated left by `shift`. padded.size() must be a multiple of b.
std::vector<std::uint64_t> block_text(std::span<const std::uint64_t> padded, std::uint64_t sigma, std::size_t b,
                                      std::size_t shift);
/// Inverse of block_text with shift 0.
std::vector<std::uint64_t> unblock_text(std::span<const std::uint64_t> blocks, std::uint64_t sigma, std::size_t b);

/// BWT of the rotations of x (symbols < k) by SA-IS over x x.
std::vector<std::uint64_t> rotation_bwt(std::span<const std::uint64_t> x, std::uint64_t k);

/// From the BWT of T_b, the BWT of the text shifted left by b/2, over b-blocks.
std::vector<std::uint64_t> induce_rotated_bwt(std::span<const std::uint64_t> bwt_b, std::uint64_t sigma,
                                              std::size_t b);

struct MergeResult {
    std::vector<std::uint64_t> merged;
    BitVector interleave;  // 1 where the merged position comes from the first BWT
    JointStats stats;
};

/// Merges two rotation BWTs over a common alphabet [0..k). All rotations of
/// both inputs must be distinct; otherwise InvariantError.
MergeResult merge_bwts(std::span<const std::uint64_t> bwt1, std::span<const std::uint64_t> bwt2, std::uint64_t k);

/// Right half of every b-block.
std::vector<std::uint64_t> halve_blocks(std::span<const std::uint64_t> merged, std::uint64_t sigma, std::size_t b);

BwtString build_bwt_doubling(const Text& t, const DoublingOptions& opt = {}, DoublingStats* stats = nullptr);

}  // namespace scix
