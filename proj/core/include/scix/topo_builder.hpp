#pragma once

// Suffix-tree topology from enumerated intervals.
//
// Every node with interval [i..j] (internal nodes and the n leaves [i..i])
// adds one to Co[i] and one to Cc[j]; writing Co[i] '(' then Cc[i] ')' for
// i = 1..n gives the DFS parenthesis sequence. The counters live in a
// two-pass succinct array: pass 1 counts per bucket of b_w positions with
// saturation at S, then each bucket gets an area holding either fixed-width
// cells (saturated) or Elias-gamma codes of its counters, located through an
// Elias-Fano directory. Pass 2 replays the same interval stream.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "scix/bitvec.hpp"
#include "scix/bptree.hpp"
#include "scix/fmindex.hpp"

namespace scix {

/// Four-Russians transitions for gamma-coded bucket configurations of at most
/// kMaxConfigBits bits. Tables are built the first time a size is requested.
class IncrementTable {
public:
    static constexpr unsigned kMaxConfigBits = 16;

    explicit IncrementTable(unsigned bucket_width) : bw_(bucket_width), by_size_(kMaxConfigBits + 1) {}

    /// Configuration after adding one to counter `slot`, or nullopt when the
    /// result does not fit in s bits or s is above the cap.
    std::optional<std::uint32_t> next(unsigned s, std::uint32_t config, unsigned slot);
    std::size_t tables_built() const noexcept;

private:
    void build(unsigned s);

    unsigned bw_;
    std::vector<std::vector<std::uint16_t>> by_size_;  // 0 marks "no transition"
};

class SuccinctCounterArray {
public:
    explicit SuccinctCounterArray(std::size_t n);

    std::size_t size() const noexcept { return n_; }
    unsigned bucket_width() const noexcept { return bw_; }
    std::uint64_t saturation() const noexcept { return sat_; }
    std::size_t buckets() const noexcept { return nb_; }

    /// Pass 1: count an increment at 1-based position pos.
    void pass1(std::size_t pos);
    /// Ends pass 1: sizes the areas and releases the bucket totals.
    void allocate();
    /// Pass 2 increment.
    void increment(std::size_t pos);

    std::uint64_t get(std::size_t pos) const;
    /// Counters of bucket k (0-based), bucket_width() values.
    void decode_bucket(std::size_t k, std::uint64_t* out) const;
    bool saturated(std::size_t k) const;

    /// Area size in bits of an unsaturated bucket with pass-1 total t.
    static std::size_t gamma_area_bits(unsigned bw, std::uint64_t t);

    /// Peak bits held by the counter structures (bucket totals, directory, areas).
    std::size_t workspace_bits() const noexcept { return peak_bits_; }
    std::size_t table_increments() const noexcept { return table_incs_; }
    std::size_t fallback_increments() const noexcept { return fallback_incs_; }
    std::size_t saturated_buckets() const noexcept { return saturated_; }

private:
    bool fixed_layout(std::size_t area_bits) const noexcept { return area_bits == std::size_t{bw_} * cell_width_; }
    void gamma_decode(std::size_t off, std::uint64_t* out) const;
    std::size_t gamma_encode(std::size_t off, std::size_t s, const std::uint64_t* vals);

    std::size_t n_;
    unsigned bw_;
    std::uint64_t sat_;
    unsigned cell_width_;
    std::size_t nb_;
    bool allocated_ = false;
    PackedArray totals_;
    EliasFanoSeq dir_;
    std::vector<std::uint64_t> areas_;
    std::unique_ptr<IncrementTable> table_;
    std::size_t peak_bits_ = 0;
    std::size_t table_incs_ = 0;
    std::size_t fallback_incs_ = 0;
    std::size_t saturated_ = 0;
};

struct TopoOptions {
    /// 32-bit plain counter arrays instead of the succinct ones.
    bool plain_counters = false;
    /// Keep plain shadow arrays and compare after pass 2.
    bool shadow_check = false;
};

struct TopoStats {
    unsigned bucket_width = 0;
    std::uint64_t saturation = 0;
    std::size_t buckets = 0;
    std::size_t internal_nodes = 0;
    std::size_t saturated_open = 0, saturated_close = 0;
    std::size_t workspace_bits_open = 0, workspace_bits_close = 0;
    std::size_t table_increments = 0, fallback_increments = 0;
};

struct CounterPair {
    std::vector<std::uint64_t> open, close;
};

/// Final Co / Cc values (1..n stored 0-based) through the configured counter scheme.
CounterPair compute_counters(const FmIndex& ix, const TopoOptions& opt = {}, TopoStats* stats = nullptr);

/// Co[i] opens then Cc[i] closes for each i; throws InvariantError if unbalanced.
BitVector emit_bp(std::span<const std::uint64_t> open, std::span<const std::uint64_t> close);

BpTree build_topology(const FmIndex& ix, const TopoOptions& opt = {}, TopoStats* stats = nullptr);

}  // namespace scix
