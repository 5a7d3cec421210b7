#include "scix/fmindex.hpp"

#include <algorithm>
#include <string>

#include "scix/error.hpp"

namespace scix {

namespace {
constexpr io::Magic kSsaMagic = io::make_magic("SSA1");
}

SampledSA::SampledSA(const SuffixArray& sa, std::size_t b) : b_(b) {
    if (b == 0) throw DomainError("sampling rate must be positive");
    const std::size_t n = sa.size();
    const unsigned w = std::max(1u, bits_for(n));
    BitBuilder bits(n);
    std::size_t marked = 0;
    for (auto v : sa) {
        bool m = (v - 1) % b == 0 || v == n;
        bits.push_back(m);
        marked += m;
    }
    marker_ = BitVector(std::move(bits));
    values_ = PackedArray(marked, w);
    isa_ = PackedArray(n == 0 ? 0 : (n - 1) / b + 1, w);
    std::size_t k = 0;
    for (std::size_t r = 1; r <= n; ++r) {
        const auto v = sa[r - 1];
        if (marker_.get0(r - 1)) values_.set(k++, v);
        if ((v - 1) % b == 0) isa_.set((v - 1) / b, r);
    }
}

std::size_t SampledSA::size_in_bits() const noexcept {
    return marker_.size_in_bits() + values_.size_in_bits() + isa_.size_in_bits() + 64;
}

void SampledSA::save(io::Writer& w) const {
    w.magic(kSsaMagic);
    w.pod<std::uint64_t>(b_);
    marker_.save(w);
    values_.save(w);
    isa_.save(w);
}

SampledSA SampledSA::load(io::Reader& r) {
    r.expect_magic(kSsaMagic);
    SampledSA s;
    s.b_ = r.pod<std::uint64_t>();
    if (s.b_ == 0) throw FormatError("sampling rate is zero");
    s.marker_ = BitVector::load(r);
    s.values_ = PackedArray::load(r);
    s.isa_ = PackedArray::load(r);
    if (s.values_.size() != s.marker_.ones()) throw FormatError("sample count does not match marker");
    return s;
}

FmIndex::FmIndex(const Text& t, const BwtString& bwt, const SuffixArray& sa, const FmOptions& opt)
    : c_(t.sigma + 1, 0), bwt_(std::span<const std::uint32_t>(bwt), t.sigma), ssa_(sa, opt.sample) {
    if (bwt.size() != t.size() || sa.size() != t.size()) throw DomainError("text, BWT and SA lengths differ");
    for (auto s : t.syms) ++c_[s + 1];
    for (std::size_t c = 1; c < c_.size(); ++c) c_[c] += c_[c - 1];
}

FmIndex FmIndex::build(const Text& t, const FmOptions& opt) {
    auto sa = sa_build(t);
    return FmIndex(t, bwt_from_sa(t, sa), sa, opt);
}

FmIndex FmIndex::from_parts(Alphabet alphabet, std::vector<std::uint64_t> c, WaveletTree bwt, SampledSA ssa) {
    if (c.size() != bwt.sigma() + 1 || c.back() != bwt.size() || c.front() != 0 || !std::is_sorted(c.begin(), c.end()))
        throw FormatError("C array inconsistent with the BWT");
    if (ssa.marker().size() != 0 && ssa.marker().size() != bwt.size()) throw FormatError("sampled SA length differs from the BWT");
    FmIndex ix;
    ix.alphabet_ = std::move(alphabet);
    ix.c_ = std::move(c);
    ix.bwt_ = std::move(bwt);
    ix.ssa_ = std::move(ssa);
    return ix;
}

Symbol FmIndex::first_symbol(std::size_t r) const {
    if (r == 0 || r > size()) throw RangeError("rank out of range");
    auto it = std::lower_bound(c_.begin(), c_.end(), r);
    return static_cast<Symbol>(it - c_.begin() - 1);
}

std::optional<Interval> FmIndex::backward_step(Interval v, Symbol c) const {
    if (c >= sigma() || v.empty()) return std::nullopt;
    const std::size_t lo = c_[c] + bwt_.rank(c, v.lo - 1) + 1;
    const std::size_t hi = c_[c] + bwt_.rank(c, v.hi);
    if (lo > hi) return std::nullopt;
    return Interval{lo, hi};
}

std::size_t FmIndex::lf(std::size_t r) const {
    auto [c, k] = bwt_.access_rank(r);
    return c_[c] + k;
}

std::size_t FmIndex::psi(std::size_t r) const {
    const Symbol c = first_symbol(r);
    return bwt_.select(c, r - c_[c]);
}

Interval FmIndex::suffix_link(const BpTree& topo, Interval v, std::size_t depth) const {
    if (v.empty() || v == full() || depth == 0) throw DomainError("suffix link of the empty factor");
    if (depth == 1) return full();
    const Symbol c = first_symbol(v.lo);
    const std::size_t i2 = bwt_.select(c, v.lo - c_[c]);
    const std::size_t j2 = bwt_.select(c, v.hi - c_[c]);
    const auto x = topo.lca(topo.leaf_select(i2), topo.leaf_select(j2));
    return {topo.leftmost_leaf(x), topo.rightmost_leaf(x)};
}

std::optional<Interval> FmIndex::find(std::span<const Symbol> pattern) const {
    Interval v = full();
    for (auto it = pattern.rbegin(); it != pattern.rend(); ++it) {
        auto next = backward_step(v, *it);
        if (!next) return std::nullopt;
        v = *next;
    }
    return v;
}

std::size_t FmIndex::count(std::span<const Symbol> pattern) const {
    auto v = find(pattern);
    return v ? v->width() : 0;
}

std::uint64_t FmIndex::sa_at(std::size_t r) const {
    if (!has_ssa()) throw DomainError("index has no sampled suffix array");
    if (r == 0 || r > size()) throw RangeError("rank out of range");
    std::uint64_t steps = 0;
    while (!ssa_.marked(r)) {
        r = lf(r);
        ++steps;
    }
    return ssa_.value_at(r) + steps;
}

std::vector<std::uint64_t> FmIndex::locate(std::span<const Symbol> pattern) const {
    std::vector<std::uint64_t> out;
    auto v = find(pattern);
    if (!v) return out;
    out.reserve(v->width());
    for (std::size_t r = v->lo; r <= v->hi; ++r) out.push_back(sa_at(r));
    return out;
}

std::vector<Symbol> FmIndex::extract(std::size_t i, std::size_t m) const {
    const std::size_t n = size();
    if (m == 0) return {};
    if (i == 0 || i + m - 1 > n) {
        throw RangeError("extract [" + std::to_string(i) + ", " + std::to_string(i + m - 1) + "] beyond text of length " +
                         std::to_string(n));
    }
    if (!has_ssa()) throw DomainError("index has no sampled suffix array");
    // Start at the first sampled position p >= i+m (p = n+1 wraps to suffix 1).
    const std::size_t b = ssa_.rate();
    const std::size_t end = i + m;  // one past the last wanted position
    const std::size_t ks = (end - 1 + b - 1) / b;  // smallest k with 1 + k*b >= end
    std::size_t p, r;
    if (1 + ks * b <= n) {
        p = 1 + ks * b;
        r = ssa_.isa_sample(ks);
    } else {
        p = n + 1;
        r = ssa_.isa_sample(0);
    }
    std::vector<Symbol> out(m);
    // BWT[r] is T[p-1]; LF moves to the suffix starting one position earlier.
    while (p > i) {
        const auto [c, k] = bwt_.access_rank(r);
        --p;
        if (p < end) out[p - i] = static_cast<Symbol>(c);
        r = c_[c] + k;
    }
    return out;
}

std::size_t FmIndex::size_in_bits() const noexcept {
    return bwt_.size_in_bits() + ssa_.size_in_bits() + c_.size() * 64;
}

}  // namespace scix
