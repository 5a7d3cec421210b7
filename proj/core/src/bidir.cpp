#include "scix/bidir.hpp"

#include "scix/error.hpp"

namespace scix {

namespace {
constexpr io::Magic kPlcpMagic = io::make_magic("SPL1");
}

BiIndex::BiIndex(FmIndex fwd, FmIndex rev, BpTree fwd_topology, std::optional<BpTree> rev_topology)
    : fwd_(std::move(fwd)), rev_(std::move(rev)), fwd_topo_(std::move(fwd_topology)), rev_topo_(std::move(rev_topology)) {
    if (fwd_.size() != rev_.size() || fwd_.C() != rev_.C()) throw DomainError("forward and reverse indexes differ");
    if (fwd_topo_.leaves() != fwd_.size()) throw DomainError("topology does not match the index");
}

BiIndex BiIndex::build(const Text& t, const BiOptions& opt) {
    auto fwd = FmIndex::build(t, opt.fm);
    auto rev = FmIndex::build(t.reversed(), opt.fm);
    auto topo = build_topology(fwd, opt.topo);
    std::optional<BpTree> rtopo;
    if (opt.reverse_topology) rtopo = build_topology(rev, opt.topo);
    return BiIndex(std::move(fwd), std::move(rev), std::move(topo), std::move(rtopo));
}

std::optional<BiInterval> BiIndex::extend_left(const BiInterval& v, Symbol c) const {
    auto f = fwd_.backward_step(v.fwd, c);
    if (!f) return std::nullopt;
    const auto nb = fwd_.bwt().range_counts(v.fwd.lo, v.fwd.hi, c).less;
    const std::size_t lo = v.rev.lo + nb;
    return BiInterval{*f, {lo, lo + f->width() - 1}, v.depth + 1};
}

std::optional<BiInterval> BiIndex::extend_right(const BiInterval& v, Symbol c) const {
    auto r = rev_.backward_step(v.rev, c);
    if (!r) return std::nullopt;
    const auto nb = rev_.bwt().range_counts(v.rev.lo, v.rev.hi, c).less;
    const std::size_t lo = v.fwd.lo + nb;
    return BiInterval{{lo, lo + r->width() - 1}, *r, v.depth + 1};
}

BiInterval BiIndex::contract_left(const BiInterval& v) const {
    if (v.depth == 0) throw DomainError("cannot contract the empty factor");
    if (v.depth == 1) return empty_factor();
    const Symbol c = fwd_.first_symbol(v.fwd.lo);
    const Interval f = fwd_.suffix_link(fwd_topo_, v.fwd, v.depth);
    const auto nb = fwd_.bwt().range_counts(f.lo, f.hi, c).less;
    const std::size_t lo = v.rev.lo - nb;
    return {f, {lo, lo + f.width() - 1}, v.depth - 1};
}

BiInterval BiIndex::contract_right(const BiInterval& v) const {
    if (!rev_topo_) throw DomainError("contract_right needs the reverse topology");
    if (v.depth == 0) throw DomainError("cannot contract the empty factor");
    if (v.depth == 1) return empty_factor();
    const Symbol c = rev_.first_symbol(v.rev.lo);
    const Interval r = rev_.suffix_link(*rev_topo_, v.rev, v.depth);
    const auto nb = rev_.bwt().range_counts(r.lo, r.hi, c).less;
    const std::size_t lo = v.fwd.lo - nb;
    return {{lo, lo + r.width() - 1}, r, v.depth - 1};
}

PlcpArray::PlcpArray(std::span<const std::uint64_t> plcp) {
    const std::size_t n = plcp.size();
    std::vector<std::uint64_t> words((2 * n + 63) / 64, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        if (i > 1 && plcp[i - 2] > plcp[i - 1] + 1) throw DomainError("sequence is not a PLCP array");
        const std::size_t pos = plcp[i - 1] + 2 * i;  // 1-based
        if (pos > 2 * n) throw DomainError("PLCP value too large");
        words[(pos - 1) >> 6] |= std::uint64_t{1} << ((pos - 1) & 63);
    }
    bits_ = BitVector(std::move(words), 2 * n);
}

PlcpArray::PlcpArray(BitVector bits) : bits_(std::move(bits)) {
    if (bits_.size() != 2 * bits_.ones()) throw FormatError("PLCP bitvector must hold n ones in 2n bits");
}

std::vector<std::uint64_t> PlcpArray::to_vector() const {
    std::vector<std::uint64_t> out(size());
    std::size_t ones = 0;
    for (std::size_t p = 1; p <= bits_.size(); ++p) {
        if (bits_.get0(p - 1)) {
            ++ones;
            out[ones - 1] = p - 2 * ones;
        }
    }
    return out;
}

void PlcpArray::save(io::Writer& w) const {
    w.magic(kPlcpMagic);
    bits_.save(w);
}

PlcpArray PlcpArray::load(io::Reader& r) {
    r.expect_magic(kPlcpMagic);
    return PlcpArray(BitVector::load(r));
}

PlcpArray build_plcp(const BiIndex& ix, PlcpStats* stats) {
    const FmIndex& fm = ix.fwd();
    const std::size_t n = fm.size();
    PlcpStats st;
    std::vector<std::uint64_t> words((2 * n + 63) / 64, 0);

    // Two forward cursors: the rank of suffix i, and the rank of suffix k = i + l
    // whose first symbol is the next candidate extension T[k].
    std::size_t ri = fm.bwt().select(kSentinel, 1);  // rank of suffix 1
    std::size_t k = 1, rk = ri;
    BiInterval cur = ix.empty_factor();
    std::size_t l = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        if (i > 1) {
            ri = fm.psi(ri);
            ++st.psi_steps;
            if (l == 0) {
                cur = ix.empty_factor();
            } else {
                cur = ix.contract_left(cur);
                ++st.contractions;
                --l;
            }
        }
        while (k < i + l) {  // keep k = i + l
            rk = fm.psi(rk);
            ++k;
            ++st.psi_steps;
        }
        while (true) {
            const Symbol c = fm.first_symbol(rk);
            auto next = ix.extend_right(cur, c);
            ++st.extensions;
            if (!next || next->fwd.lo == ri) break;
            cur = *next;
            ++l;
            rk = fm.psi(rk);
            ++k;
            ++st.psi_steps;
        }
        const std::size_t pos = l + 2 * i;
        words[(pos - 1) >> 6] |= std::uint64_t{1} << ((pos - 1) & 63);
    }
    if (stats) *stats = st;
    return PlcpArray(BitVector(std::move(words), 2 * n));
}

}  // namespace scix
