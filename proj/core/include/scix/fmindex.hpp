#pragma once

// FM-index: wavelet tree over the BWT, the C array and a sampled suffix array.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "scix/bitvec.hpp"
#include "scix/bptree.hpp"
#include "scix/sufsort.hpp"
#include "scix/text.hpp"
#include "scix/wavelet.hpp"

namespace scix {

/// Suffix-array interval, 1-based inclusive.
struct Interval {
    std::size_t lo = 1;
    std::size_t hi = 0;

    std::size_t width() const noexcept { return hi >= lo ? hi - lo + 1 : 0; }
    bool empty() const noexcept { return hi < lo; }
    friend bool operator==(const Interval&, const Interval&) = default;
    friend auto operator<=>(const Interval&, const Interval&) = default;
};

/// SA values at ranks whose value is 1 mod b or n, plus the inverse samples.
class SampledSA {
public:
    SampledSA() = default;
    SampledSA(const SuffixArray& sa, std::size_t b);

    std::size_t rate() const noexcept { return b_; }
    bool marked(std::size_t rank) const { return marker_.get0(rank - 1); }
    /// SA value at a marked rank.
    std::uint64_t value_at(std::size_t rank) const { return values_[marker_.rank1(rank) - 1]; }
    /// Rank of the suffix starting at the k-th sampled text position 1 + k*b.
    std::uint64_t isa_sample(std::size_t k) const { return isa_[k]; }
    std::size_t isa_samples() const noexcept { return isa_.size(); }
    std::size_t size() const noexcept { return values_.size(); }
    const BitVector& marker() const noexcept { return marker_; }

    std::size_t size_in_bits() const noexcept;
    void save(io::Writer& w) const;
    static SampledSA load(io::Reader& r);

    friend bool operator==(const SampledSA& a, const SampledSA& b) {
        return a.b_ == b.b_ && a.marker_ == b.marker_ && a.values_ == b.values_ && a.isa_ == b.isa_;
    }

private:
    std::size_t b_ = 1;
    BitVector marker_;
    PackedArray values_;
    PackedArray isa_;
};

struct FmOptions {
    std::size_t sample = 32;
};

class FmIndex {
public:
    FmIndex() = default;
    /// Builds from a text, its BWT and its suffix array.
    FmIndex(const Text& t, const BwtString& bwt, const SuffixArray& sa, const FmOptions& opt = {});
    /// Builds from a text using SA-IS.
    static FmIndex build(const Text& t, const FmOptions& opt = {});
    /// An empty `ssa` leaves locate/extract unavailable.
    static FmIndex from_parts(Alphabet alphabet, std::vector<std::uint64_t> c, WaveletTree bwt, SampledSA ssa = {});

    std::size_t size() const noexcept { return bwt_.size(); }
    std::uint64_t sigma() const noexcept { return bwt_.sigma(); }
    const WaveletTree& bwt() const noexcept { return bwt_; }
    /// C[c] = number of text symbols smaller than c, for c in [0..sigma]; C[sigma] = n.
    const std::vector<std::uint64_t>& C() const noexcept { return c_; }
    const SampledSA& ssa() const noexcept { return ssa_; }
    /// False for indexes loaded without the sampled suffix array (count only).
    bool has_ssa() const noexcept { return ssa_.marker().size() == size() && size() > 0; }
    const Alphabet& alphabet() const noexcept { return alphabet_; }
    void set_alphabet(Alphabet a) { alphabet_ = std::move(a); }

    Interval full() const noexcept { return {1, size()}; }
    std::uint64_t freq(Symbol c) const { return c < sigma() ? c_[c + 1] - c_[c] : 0; }
    /// First symbol of the suffix of rank r.
    Symbol first_symbol(std::size_t r) const;

    /// Interval of c.p from the interval of p; nullopt when c.p does not occur.
    std::optional<Interval> backward_step(Interval v, Symbol c) const;
    /// Rank of suffix s-1 given the rank of suffix s (cyclic).
    std::size_t lf(std::size_t r) const;
    /// Rank of suffix s+1 given the rank of suffix s (cyclic).
    std::size_t psi(std::size_t r) const;

    /// Interval of p from the interval v of c.p, where c.p is right-maximal
    /// (an internal node of `topo`) or has length 1.
    Interval suffix_link(const BpTree& topo, Interval v, std::size_t depth) const;

    std::optional<Interval> find(std::span<const Symbol> pattern) const;
    std::size_t count(std::span<const Symbol> pattern) const;
    std::vector<std::uint64_t> locate(std::span<const Symbol> pattern) const;
    /// SA[r] via LF walk to the nearest sample.
    std::uint64_t sa_at(std::size_t r) const;
    /// T[i..i+m-1]; position n is the sentinel.
    std::vector<Symbol> extract(std::size_t i, std::size_t m) const;

    std::size_t size_in_bits() const noexcept;

private:
    Alphabet alphabet_;
    std::vector<std::uint64_t> c_;
    WaveletTree bwt_;
    SampledSA ssa_;
};

}  // namespace scix
