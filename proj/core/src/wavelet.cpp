#include "scix/wavelet.hpp"

#include <algorithm>
#include <string>

namespace scix {

namespace {
constexpr io::Magic kWaveletMagic = io::make_magic("SWT1");
}

WaveletTree::WaveletTree(std::span<const std::uint64_t> seq, std::uint64_t sigma) : n_(seq.size()), sigma_(sigma) {
    if (sigma == 0) throw DomainError("wavelet tree needs sigma >= 1");
    for (auto c : seq) {
        if (c >= sigma) throw DomainError("symbol " + std::to_string(c) + " >= sigma " + std::to_string(sigma));
    }
    build(std::vector<std::uint64_t>(seq.begin(), seq.end()));
}

WaveletTree::WaveletTree(std::span<const std::uint32_t> seq, std::uint64_t sigma) : n_(seq.size()), sigma_(sigma) {
    if (sigma == 0) throw DomainError("wavelet tree needs sigma >= 1");
    std::vector<std::uint64_t> cur(seq.begin(), seq.end());
    for (auto c : cur) {
        if (c >= sigma) throw DomainError("symbol " + std::to_string(c) + " >= sigma " + std::to_string(sigma));
    }
    build(std::move(cur));
}

void WaveletTree::build(std::vector<std::uint64_t> cur) {
    const unsigned nlevels = bits_for(sigma_ - 1);
    levels_.clear();
    levels_.reserve(nlevels);
    std::vector<std::uint64_t> next(cur.size());
    for (unsigned l = 0; l < nlevels; ++l) {
        const unsigned shift = nlevels - 1 - l;
        BitBuilder bits(n_);
        for (auto c : cur) bits.push_back((c >> shift) & 1U);
        levels_.emplace_back(std::move(bits));
        // Stable partition of every node (run of equal higher bits) into zeros then ones.
        std::size_t s = 0;
        while (s < cur.size()) {
            const std::uint64_t node = cur[s] >> (shift + 1);
            std::size_t e = s;
            while (e < cur.size() && (cur[e] >> (shift + 1)) == node) ++e;
            std::size_t out = s;
            for (std::size_t k = s; k < e; ++k) {
                if (!((cur[k] >> shift) & 1U)) next[out++] = cur[k];
            }
            for (std::size_t k = s; k < e; ++k) {
                if ((cur[k] >> shift) & 1U) next[out++] = cur[k];
            }
            s = e;
        }
        cur.swap(next);
    }
}

std::uint64_t WaveletTree::access(std::size_t i) const {
    return access_rank(i).first;
}

std::pair<std::uint64_t, std::size_t> WaveletTree::access_rank(std::size_t i) const {
    if (i == 0 || i > n_) throw RangeError("wavelet access position " + std::to_string(i) + " out of range");
    std::size_t s = 0, e = n_, pos = i - 1;  // pos: 0-based offset inside node [s, e)
    std::uint64_t c = 0;
    for (const auto& bv : levels_) {
        const std::size_t ones_before = bv.rank1(s);
        const std::size_t ones_upto = bv.rank1(s + pos);
        const std::size_t ones_node = bv.rank1(e) - ones_before;
        const std::size_t zeros_node = (e - s) - ones_node;
        if (bv.get0(s + pos)) {
            c = (c << 1) | 1U;
            pos = ones_upto - ones_before;
            s += zeros_node;
        } else {
            c <<= 1;
            pos = pos - (ones_upto - ones_before);
            e = s + zeros_node;
        }
    }
    return {c, pos + 1};
}

std::size_t WaveletTree::rank(std::uint64_t c, std::size_t i) const {
    if (i > n_) throw RangeError("wavelet rank position " + std::to_string(i) + " out of range");
    if (c >= sigma_) return 0;
    std::size_t s = 0, e = n_, pos = i;  // pos: prefix length inside node
    for (unsigned l = 0; l < levels_.size() && pos != 0; ++l) {
        const auto& bv = levels_[l];
        const std::size_t ones_before = bv.rank1(s);
        const std::size_t ones_prefix = bv.rank1(s + pos) - ones_before;
        const std::size_t ones_node = bv.rank1(e) - ones_before;
        const std::size_t zeros_node = (e - s) - ones_node;
        if (bit_of(c, l)) {
            pos = ones_prefix;
            s += zeros_node;
        } else {
            pos -= ones_prefix;
            e = s + zeros_node;
        }
    }
    return pos;
}

std::size_t WaveletTree::select(std::uint64_t c, std::size_t j) const {
    if (c >= sigma_ || j == 0) throw RangeError("wavelet select argument out of range");
    const unsigned nl = levels();
    std::vector<std::size_t> starts(nl + 1);
    std::size_t s = 0, e = n_;
    for (unsigned l = 0; l < nl; ++l) {
        starts[l] = s;
        const auto& bv = levels_[l];
        const std::size_t ones_before = bv.rank1(s);
        const std::size_t ones_node = bv.rank1(e) - ones_before;
        const std::size_t zeros_node = (e - s) - ones_node;
        if (bit_of(c, l)) s += zeros_node;
        else e = s + zeros_node;
    }
    if (e - s < j) throw RangeError("wavelet select: symbol occurs fewer than " + std::to_string(j) + " times");
    std::size_t pos = j - 1;
    for (unsigned l = nl; l-- > 0;) {
        const auto& bv = levels_[l];
        const std::size_t st = starts[l];
        if (bit_of(c, l)) {
            pos = bv.select1(bv.rank1(st) + pos + 1) - 1 - st;
        } else {
            pos = bv.select0(st - bv.rank1(st) + pos + 1) - 1 - st;
        }
    }
    return pos + 1;
}

WaveletTree::RangeCounts WaveletTree::range_counts(std::size_t i, std::size_t j, std::uint64_t c) const {
    if (i > j) return {0, 0};
    if (i == 0 || j > n_) throw RangeError("wavelet range out of bounds");
    if (c >= sigma_) return {j - i + 1, 0};
    std::size_t s = 0, e = n_, a = i - 1, b = j;
    std::size_t less = 0;
    for (unsigned l = 0; l < levels_.size() && a < b; ++l) {
        const auto& bv = levels_[l];
        const std::size_t ones_before = bv.rank1(s);
        const std::size_t oa = bv.rank1(s + a) - ones_before;
        const std::size_t ob = bv.rank1(s + b) - ones_before;
        const std::size_t ones_node = bv.rank1(e) - ones_before;
        const std::size_t zeros_node = (e - s) - ones_node;
        if (bit_of(c, l)) {
            less += (b - a) - (ob - oa);
            a = oa;
            b = ob;
            s += zeros_node;
        } else {
            a -= oa;
            b -= ob;
            e = s + zeros_node;
        }
    }
    return {less, b - a};
}

void WaveletTree::range_distinct(std::size_t i, std::size_t j, std::vector<DistinctEntry>& out) const {
    if (i > j) return;
    if (i == 0 || j > n_) throw RangeError("wavelet range out of bounds");
    distinct_rec(0, 0, n_, 0, i - 1, j, out);
}

void WaveletTree::distinct_rec(unsigned level, std::size_t s, std::size_t e, std::uint64_t prefix, std::size_t a,
                               std::size_t b, std::vector<DistinctEntry>& out) const {
    if (level == levels_.size()) {
        out.push_back({prefix, a, b - a});
        return;
    }
    const auto& bv = levels_[level];
    const std::size_t ones_before = bv.rank1(s);
    const std::size_t oa = bv.rank1(s + a) - ones_before;
    const std::size_t ob = bv.rank1(s + b) - ones_before;
    const std::size_t ones_node = bv.rank1(e) - ones_before;
    const std::size_t zeros_node = (e - s) - ones_node;
    if ((a - oa) < (b - ob)) distinct_rec(level + 1, s, s + zeros_node, prefix << 1, a - oa, b - ob, out);
    if (oa < ob) distinct_rec(level + 1, s + zeros_node, e, (prefix << 1) | 1U, oa, ob, out);
}

std::vector<std::uint64_t> WaveletTree::to_vector() const {
    std::vector<std::uint64_t> v(n_);
    for (std::size_t i = 0; i < n_; ++i) v[i] = access(i + 1);
    return v;
}

std::size_t WaveletTree::size_in_bits() const noexcept {
    std::size_t bits = 3 * 64;
    for (const auto& bv : levels_) bits += bv.size_in_bits();
    return bits;
}

void WaveletTree::save(io::Writer& w) const {
    w.magic(kWaveletMagic);
    w.pod<std::uint64_t>(sigma_);
    w.pod<std::uint64_t>(n_);
    w.pod<std::uint32_t>(levels());
    for (const auto& bv : levels_) bv.save(w);
}

WaveletTree WaveletTree::load(io::Reader& r) {
    r.expect_magic(kWaveletMagic);
    WaveletTree t;
    t.sigma_ = r.pod<std::uint64_t>();
    t.n_ = r.pod<std::uint64_t>();
    const auto nl = r.pod<std::uint32_t>();
    if (t.sigma_ == 0 || nl != bits_for(t.sigma_ - 1)) throw FormatError("inconsistent wavelet header");
    for (std::uint32_t l = 0; l < nl; ++l) {
        t.levels_.push_back(BitVector::load(r));
        if (t.levels_.back().size() != t.n_) throw FormatError("wavelet level length mismatch");
    }
    return t;
}

}  // namespace scix
