#include "scix/bitvec.hpp"

#include <algorithm>
#include <string>

#if defined(__BMI2__)
#include <immintrin.h>
#endif

namespace scix {

namespace {

constexpr io::Magic kBitVectorMagic = io::make_magic("SBV1");
constexpr io::Magic kPackedMagic = io::make_magic("SIV1");
constexpr io::Magic kEliasFanoMagic = io::make_magic("SEF1");

constexpr std::size_t kWordsPerSuper = BitVector::kSuperBits / 64;
constexpr std::size_t kWordsPerSub = BitVector::kSubBits / 64;

// Packed sub-block counters: 10 bits for the first sub-block, 11 for the others.
constexpr unsigned kSubShift[4] = {0, 0, 10, 21};
constexpr std::uint32_t kSubMask[4] = {0, 0x3FF, 0x7FF, 0x7FF};

std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

}  // namespace

unsigned select_in_word(std::uint64_t w, unsigned k) noexcept {
#if defined(__BMI2__)
    return static_cast<unsigned>(std::countr_zero(_pdep_u64(std::uint64_t{1} << k, w)));
#else
    unsigned base = 0;
    for (;;) {
        auto c = static_cast<unsigned>(std::popcount(w & 0xFFU));
        if (k < c) break;
        k -= c;
        w >>= 8;
        base += 8;
    }
    for (;; ++base, w >>= 1) {
        if (w & 1U) {
            if (k == 0) return base;
            --k;
        }
    }
#endif
}

void BitBuilder::append_bits(std::uint64_t v, unsigned width) {
    if (width == 0) return;
    if (width < 64) v &= (std::uint64_t{1} << width) - 1;
    const unsigned off = size_ & 63;
    if (off == 0) {
        words_.push_back(v);
    } else {
        words_.back() |= v << off;
        if (off + width > 64) words_.push_back(v >> (64 - off));
    }
    size_ += width;
}

void BitBuilder::append_run(bool b, std::size_t count) {
    while (count >= 64) {
        append_bits(b ? ~std::uint64_t{0} : 0, 64);
        count -= 64;
    }
    if (count) append_bits(b ? ~std::uint64_t{0} : 0, static_cast<unsigned>(count));
}

BitVector::BitVector(std::vector<std::uint64_t> words, std::size_t size)
    : words_(std::move(words)), size_(size) {
    words_.resize(words_for(size_));
    if (size_ & 63) words_.back() &= (std::uint64_t{1} << (size_ & 63)) - 1;
    build_directories();
}

BitVector::BitVector(std::span<const std::uint8_t> bits) {
    BitBuilder b(bits.size());
    for (auto v : bits) b.push_back(v != 0);
    size_ = b.size();
    words_ = b.release();
    build_directories();
}

void BitVector::build_directories() {
    const std::size_t nsuper = (size_ + kSuperBits - 1) / kSuperBits;
    super_.assign(nsuper + 1, 0);
    sub_.assign(nsuper, 0);
    sel1_.clear();
    sel0_.clear();
    std::uint64_t total = 0;
    for (std::size_t sb = 0; sb < nsuper; ++sb) {
        super_[sb] = total;
        std::uint64_t in_super = 0;
        std::uint32_t packed = 0;
        for (std::size_t k = 0; k < kWordsPerSuper; ++k) {
            const std::size_t w = sb * kWordsPerSuper + k;
            if (k != 0 && k % kWordsPerSub == 0) {
                const std::size_t q = k / kWordsPerSub;
                packed |= static_cast<std::uint32_t>(in_super) << kSubShift[q];
            }
            if (w < words_.size()) in_super += static_cast<std::uint64_t>(std::popcount(words_[w]));
        }
        sub_[sb] = packed;
        total += in_super;
    }
    super_[nsuper] = total;
    ones_ = total;

    std::uint64_t seen1 = 0, seen0 = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        const std::size_t valid = std::min<std::size_t>(64, size_ - w * 64);
        const std::uint64_t mask = valid == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << valid) - 1;
        const std::uint64_t one_bits = words_[w];
        const std::uint64_t zero_bits = ~words_[w] & mask;
        auto c1 = static_cast<std::uint64_t>(std::popcount(one_bits));
        auto c0 = static_cast<std::uint64_t>(std::popcount(zero_bits));
        // Next sample index falls inside this word?
        std::uint64_t next1 = (seen1 + kSelectSample - 1) / kSelectSample * kSelectSample;
        while (next1 < seen1 + c1) {
            sel1_.push_back(w * 64 + select_in_word(one_bits, static_cast<unsigned>(next1 - seen1)));
            next1 += kSelectSample;
        }
        std::uint64_t next0 = (seen0 + kSelectSample - 1) / kSelectSample * kSelectSample;
        while (next0 < seen0 + c0) {
            sel0_.push_back(w * 64 + select_in_word(zero_bits, static_cast<unsigned>(next0 - seen0)));
            next0 += kSelectSample;
        }
        seen1 += c1;
        seen0 += c0;
    }
}

bool BitVector::bit(std::size_t p) const {
    if (p == 0 || p > size_) throw RangeError("bit position " + std::to_string(p) + " out of range");
    return get0(p - 1);
}

std::size_t BitVector::rank1_unchecked(std::size_t i) const noexcept {
    const std::size_t sb = i / kSuperBits;
    std::size_t r = super_[sb];
    const std::size_t q = (i / kSubBits) % (kSuperBits / kSubBits);
    if (q != 0) r += (sub_[sb] >> kSubShift[q]) & kSubMask[q];
    const std::size_t wend = i >> 6;
    for (std::size_t w = sb * kWordsPerSuper + q * kWordsPerSub; w < wend; ++w) {
        r += static_cast<std::size_t>(std::popcount(words_[w]));
    }
    if (i & 63) r += static_cast<std::size_t>(std::popcount(words_[wend] & ((std::uint64_t{1} << (i & 63)) - 1)));
    return r;
}

std::size_t BitVector::rank1(std::size_t i) const {
    if (i > size_) throw RangeError("rank position " + std::to_string(i) + " out of range");
    return rank1_unchecked(i);
}

template <bool Ones>
std::size_t BitVector::select_impl(std::size_t j) const {
    const std::size_t total = Ones ? ones_ : size_ - ones_;
    if (j == 0 || j > total) throw RangeError("select argument " + std::to_string(j) + " out of range");
    const std::size_t k = j - 1;  // 0-based rank of the wanted bit
    const auto& samples = Ones ? sel1_ : sel0_;
    const std::size_t nsuper = super_.size() - 1;

    auto before_super = [&](std::size_t sb) -> std::size_t {
        if constexpr (Ones) return super_[sb];
        return sb * kSuperBits - super_[sb];
    };

    const std::size_t s = k / kSelectSample;
    std::size_t lo = samples[s] / kSuperBits;
    std::size_t hi = (s + 1 < samples.size()) ? samples[s + 1] / kSuperBits : nsuper - 1;
    // Largest superblock in [lo, hi] with before_super(sb) <= k.
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo + 1) / 2;
        if (before_super(mid) <= k) lo = mid;
        else hi = mid - 1;
    }
    const std::size_t sb = lo;
    std::size_t rem = k - before_super(sb);

    std::size_t q = 0;
    for (std::size_t cand = 3; cand >= 1; --cand) {
        std::size_t cnt = (sub_[sb] >> kSubShift[cand]) & kSubMask[cand];
        if constexpr (!Ones) cnt = cand * kSubBits - cnt;
        if (cnt <= rem) {
            q = cand;
            rem -= cnt;
            break;
        }
    }
    std::size_t w = sb * kWordsPerSuper + q * kWordsPerSub;
    for (;; ++w) {
        const std::uint64_t bits = Ones ? words_[w] : ~words_[w];
        const auto c = static_cast<std::size_t>(std::popcount(bits));
        if (rem < c) return w * 64 + select_in_word(bits, static_cast<unsigned>(rem)) + 1;
        rem -= c;
    }
}

std::size_t BitVector::select1(std::size_t j) const { return select_impl<true>(j); }
std::size_t BitVector::select0(std::size_t j) const { return select_impl<false>(j); }

std::size_t BitVector::size_in_bits() const noexcept {
    return words_.size() * 64 + super_.size() * 64 + sub_.size() * 32 + sel1_.size() * 64 +
           sel0_.size() * 64 + 2 * 64;
}

void BitVector::save(io::Writer& w) const {
    w.magic(kBitVectorMagic);
    w.pod<std::uint64_t>(size_);
    w.pod<std::uint64_t>(ones_);
    w.vec(words_);
    w.vec(super_);
    w.vec(sub_);
    w.vec(sel1_);
    w.vec(sel0_);
}

BitVector BitVector::load(io::Reader& r) {
    r.expect_magic(kBitVectorMagic);
    BitVector bv;
    bv.size_ = r.pod<std::uint64_t>();
    bv.ones_ = r.pod<std::uint64_t>();
    bv.words_ = r.vec<std::uint64_t>();
    bv.super_ = r.vec<std::uint64_t>();
    bv.sub_ = r.vec<std::uint32_t>();
    bv.sel1_ = r.vec<std::uint64_t>();
    bv.sel0_ = r.vec<std::uint64_t>();
    const std::size_t nsuper = (bv.size_ + kSuperBits - 1) / kSuperBits;
    if (bv.words_.size() != words_for(bv.size_) || bv.super_.size() != nsuper + 1 ||
        bv.sub_.size() != nsuper || bv.super_.back() != bv.ones_ || bv.ones_ > bv.size_) {
        throw FormatError("inconsistent bitvector section");
    }
    return bv;
}

PackedArray::PackedArray(std::size_t n, unsigned width) : size_(n), width_(width) {
    if (width > 64) throw CapacityError("packed width exceeds 64 bits");
    words_.assign(words_for(n * width), 0);
}

std::uint64_t PackedArray::get(std::size_t i) const noexcept {
    if (width_ == 0) return 0;
    const std::size_t bitpos = i * width_;
    const std::size_t w = bitpos >> 6;
    const unsigned off = bitpos & 63;
    std::uint64_t v = words_[w] >> off;
    if (off + width_ > 64) v |= words_[w + 1] << (64 - off);
    return width_ == 64 ? v : v & ((std::uint64_t{1} << width_) - 1);
}

void PackedArray::set(std::size_t i, std::uint64_t v) noexcept {
    if (width_ == 0) return;
    const std::uint64_t mask = width_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width_) - 1;
    v &= mask;
    const std::size_t bitpos = i * width_;
    const std::size_t w = bitpos >> 6;
    const unsigned off = bitpos & 63;
    words_[w] = (words_[w] & ~(mask << off)) | (v << off);
    if (off + width_ > 64) {
        const unsigned spill = off + width_ - 64;
        const std::uint64_t hmask = (std::uint64_t{1} << spill) - 1;
        words_[w + 1] = (words_[w + 1] & ~hmask) | (v >> (64 - off));
    }
}

void PackedArray::save(io::Writer& w) const {
    w.magic(kPackedMagic);
    w.pod<std::uint64_t>(size_);
    w.pod<std::uint32_t>(width_);
    w.vec(words_);
}

PackedArray PackedArray::load(io::Reader& r) {
    r.expect_magic(kPackedMagic);
    PackedArray a;
    a.size_ = r.pod<std::uint64_t>();
    a.width_ = r.pod<std::uint32_t>();
    a.words_ = r.vec<std::uint64_t>();
    if (a.width_ > 64 || a.words_.size() != words_for(a.size_ * a.width_)) {
        throw FormatError("inconsistent packed array section");
    }
    return a;
}

EliasFanoSeq::EliasFanoSeq(std::span<const std::uint64_t> values)
    : EliasFanoSeq(values.size(), [&](std::size_t k) { return values[k]; }) {}

EliasFanoSeq::EliasFanoSeq(std::size_t n, const std::function<std::uint64_t(std::size_t)>& value) : n_(n) {
    std::uint64_t total = 0;
    for (std::size_t k = 0; k < n_; ++k) {
        if (__builtin_add_overflow(total, value(k), &total)) throw CapacityError("Elias-Fano prefix sum overflows 64 bits");
    }
    universe_ = total;
    const unsigned l = (n_ != 0 && universe_ / n_ >= 1) ? bits_for(universe_ / n_) - 1 : 0;
    low_ = PackedArray(n_, l);
    const std::size_t high_len = n_ == 0 ? 0 : n_ + static_cast<std::size_t>(universe_ >> l) + 1;
    std::vector<std::uint64_t> high_words(words_for(high_len), 0);
    std::uint64_t sum = 0;
    for (std::size_t k = 0; k < n_; ++k) {
        sum += value(k);
        low_.set(k, sum);
        const std::size_t pos = static_cast<std::size_t>(sum >> l) + k;
        high_words[pos >> 6] |= std::uint64_t{1} << (pos & 63);
    }
    high_ = BitVector(std::move(high_words), high_len);
}

std::uint64_t EliasFanoSeq::prefix_sum(std::size_t i) const {
    if (i > n_) throw RangeError("prefix_sum index " + std::to_string(i) + " out of range");
    if (i == 0) return 0;
    const std::uint64_t high = high_.select1(i) - 1 - (i - 1);
    return (high << low_.width()) | low_.get(i - 1);
}

std::size_t EliasFanoSeq::size_in_bits() const noexcept {
    return low_.size_in_bits() + high_.size_in_bits() + 3 * 64;
}

void EliasFanoSeq::save(io::Writer& w) const {
    w.magic(kEliasFanoMagic);
    w.pod<std::uint64_t>(n_);
    w.pod<std::uint64_t>(universe_);
    low_.save(w);
    high_.save(w);
}

EliasFanoSeq EliasFanoSeq::load(io::Reader& r) {
    r.expect_magic(kEliasFanoMagic);
    EliasFanoSeq s;
    s.n_ = r.pod<std::uint64_t>();
    s.universe_ = r.pod<std::uint64_t>();
    s.low_ = PackedArray::load(r);
    s.high_ = BitVector::load(r);
    if (s.low_.size() != s.n_ || s.high_.ones() != s.n_) throw FormatError("inconsistent Elias-Fano section");
    return s;
}

}  // namespace scix
