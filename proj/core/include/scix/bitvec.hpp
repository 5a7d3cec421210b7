#pragma once

// Plain bitvectors with rank/select, fixed-width packed integer arrays and
// Elias-Fano prefix sums.
//
// Positions are 1-based throughout the public API: a bitvector of length m
// holds bits at positions 1..m, rank1(i) counts ones in [1..i] and
// select1(j) returns the position of the j-th one.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "scix/io.hpp"

namespace scix {

/// Select the k-th (0-based) set bit of w. Precondition: k < popcount(w).
unsigned select_in_word(std::uint64_t w, unsigned k) noexcept;

/// Number of bits needed to store v (0 for v == 0).
constexpr unsigned bits_for(std::uint64_t v) noexcept {
    return static_cast<unsigned>(std::bit_width(v));
}

/// Append-only bit buffer used to assemble bitvectors and variable-length codes.
class BitBuilder {
public:
    BitBuilder() = default;
    explicit BitBuilder(std::size_t reserve_bits) { words_.reserve((reserve_bits + 63) / 64); }

    void push_back(bool b) {
        if ((size_ & 63) == 0) words_.push_back(0);
        if (b) words_.back() |= std::uint64_t{1} << (size_ & 63);
        ++size_;
    }

    /// Append the low `width` bits of v, least significant first.
    void append_bits(std::uint64_t v, unsigned width);

    void append_run(bool b, std::size_t count);

    std::size_t size() const noexcept { return size_; }
    const std::vector<std::uint64_t>& words() const noexcept { return words_; }
    std::vector<std::uint64_t> release() { return std::move(words_); }

private:
    std::vector<std::uint64_t> words_;
    std::size_t size_ = 0;
};

class BitVector {
public:
    static constexpr std::size_t kSuperBits = 2048;
    static constexpr std::size_t kSubBits = 512;
    static constexpr std::size_t kSelectSample = 4096;

    BitVector() { build_directories(); }
    BitVector(std::vector<std::uint64_t> words, std::size_t size);
    explicit BitVector(BitBuilder&& b) : BitVector(b.release(), b.size()) {}
    explicit BitVector(std::span<const std::uint8_t> bits);

    std::size_t size() const noexcept { return size_; }
    std::size_t ones() const noexcept { return ones_; }
    std::size_t zeros() const noexcept { return size_ - ones_; }

    /// Bit at 1-based position p.
    bool bit(std::size_t p) const;

    /// Unchecked 0-based access for hot loops.
    bool get0(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }

    /// Ones in positions [1..i], 0 <= i <= size().
    std::size_t rank1(std::size_t i) const;
    std::size_t rank0(std::size_t i) const { return i - rank1(i); }

    /// Position of the j-th one (resp. zero), 1 <= j <= ones() (resp. zeros()).
    std::size_t select1(std::size_t j) const;
    std::size_t select0(std::size_t j) const;

    std::size_t size_in_bits() const noexcept;

    const std::vector<std::uint64_t>& words() const noexcept { return words_; }

    void save(io::Writer& w) const;
    static BitVector load(io::Reader& r);

    friend bool operator==(const BitVector& a, const BitVector& b) {
        return a.size_ == b.size_ && a.words_ == b.words_;
    }

private:
    std::size_t rank1_unchecked(std::size_t i) const noexcept;
    template <bool Ones>
    std::size_t select_impl(std::size_t j) const;
    void build_directories();

    std::vector<std::uint64_t> words_;
    std::size_t size_ = 0;
    std::size_t ones_ = 0;
    // Cumulative ones before each 2048-bit superblock (one extra trailing entry).
    std::vector<std::uint64_t> super_;
    // Per superblock: ones in the first 512, 1024, 1536 bits packed as 10+11+11 bits.
    std::vector<std::uint32_t> sub_;
    // Position (0-based) of every 4096-th one / zero, starting with the first.
    std::vector<std::uint64_t> sel1_;
    std::vector<std::uint64_t> sel0_;
};

/// Fixed-width packed integer array.
class PackedArray {
public:
    PackedArray() = default;
    PackedArray(std::size_t n, unsigned width);

    std::size_t size() const noexcept { return size_; }
    unsigned width() const noexcept { return width_; }

    std::uint64_t get(std::size_t i) const noexcept;
    void set(std::size_t i, std::uint64_t v) noexcept;
    std::uint64_t operator[](std::size_t i) const noexcept { return get(i); }

    std::size_t size_in_bits() const noexcept { return words_.size() * 64; }

    void save(io::Writer& w) const;
    static PackedArray load(io::Reader& r);

    friend bool operator==(const PackedArray&, const PackedArray&) = default;

private:
    std::vector<std::uint64_t> words_;
    std::size_t size_ = 0;
    unsigned width_ = 0;
};

/// Elias-Fano encoding of the prefix sums of a sequence of non-negative integers.
class EliasFanoSeq {
public:
    EliasFanoSeq() = default;
    explicit EliasFanoSeq(std::span<const std::uint64_t> values);
    /// Streaming form: value(k) for k in [0..n) is called twice per element.
    EliasFanoSeq(std::size_t n, const std::function<std::uint64_t(std::size_t)>& value);

    std::size_t size() const noexcept { return n_; }
    std::uint64_t total() const noexcept { return universe_; }

    /// Sum of values[1..i]; prefix_sum(0) == 0.
    std::uint64_t prefix_sum(std::size_t i) const;
    /// values[i] for 1 <= i <= size().
    std::uint64_t value(std::size_t i) const { return prefix_sum(i) - prefix_sum(i - 1); }

    unsigned low_width() const noexcept { return low_.width(); }
    std::size_t size_in_bits() const noexcept;

    void save(io::Writer& w) const;
    static EliasFanoSeq load(io::Reader& r);

private:
    std::size_t n_ = 0;
    std::uint64_t universe_ = 0;
    PackedArray low_;
    BitVector high_;
};

}  // namespace scix
