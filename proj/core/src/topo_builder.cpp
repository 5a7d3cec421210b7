#include "scix/topo_builder.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "scix/enumerate.hpp"
#include "scix/error.hpp"

namespace scix {
namespace {

unsigned ceil_log2(std::uint64_t x) { return x <= 1 ? 0 : static_cast<unsigned>(std::bit_width(x - 1)); }

std::uint64_t low_mask(unsigned w) { return w >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << w) - 1; }

// Reverses the low w bits of v.
std::uint64_t reverse_bits(std::uint64_t v, unsigned w) {
    std::uint64_t r = 0;
    for (unsigned i = 0; i < w; ++i, v >>= 1) r = (r << 1) | (v & 1);
    return r;
}

std::uint64_t get_bits(const std::vector<std::uint64_t>& words, std::size_t pos, unsigned w) {
    const std::size_t k = pos >> 6;
    const unsigned off = pos & 63;
    std::uint64_t v = words[k] >> off;
    if (off && off + w > 64) v |= words[k + 1] << (64 - off);
    return v & low_mask(w);
}

void set_bits(std::vector<std::uint64_t>& words, std::size_t pos, unsigned w, std::uint64_t v) {
    if (w == 0) return;
    const std::uint64_t m = low_mask(w);
    v &= m;
    const std::size_t k = pos >> 6;
    const unsigned off = pos & 63;
    words[k] = (words[k] & ~(m << off)) | (v << off);
    if (off && off + w > 64) {
        const unsigned hi = 64 - off;
        words[k + 1] = (words[k + 1] & ~(m >> hi)) | (v >> hi);
    }
}

// Gamma code of u >= 1 as a stream word (first stream bit lowest) and its length.
std::pair<std::uint64_t, unsigned> gamma_code(std::uint64_t u) {
    const unsigned l = static_cast<unsigned>(std::bit_width(u));
    return {reverse_bits(u, l) << (l - 1), 2 * l - 1};
}

}  // namespace

// ---- IncrementTable --------------------------------------------------------

void IncrementTable::build(unsigned s) {
    auto& tab = by_size_[s];
    tab.assign((std::size_t{1} << s) * bw_, 0);
    std::vector<std::uint64_t> vals(bw_);
    for (std::uint32_t cfg = 1; cfg < (1u << s); ++cfg) {
        unsigned p = 0;
        bool ok = true;
        for (unsigned i = 0; i < bw_ && ok; ++i) {
            const std::uint32_t rest = p < s ? cfg >> p : 0;
            if (rest == 0) {
                ok = false;
                break;
            }
            const unsigned z = static_cast<unsigned>(std::countr_zero(rest));
            if (p + 2 * z + 1 > s) {
                ok = false;
                break;
            }
            vals[i] = reverse_bits((rest >> z) & low_mask(z + 1), z + 1) - 1;
            p += 2 * z + 1;
        }
        if (!ok || (p < s && (cfg >> p) != 0)) continue;
        for (unsigned slot = 0; slot < bw_; ++slot) {
            ++vals[slot];
            std::uint64_t enc = 0;
            unsigned len = 0;
            for (unsigned i = 0; i < bw_ && len <= s; ++i) {
                auto [code, l] = gamma_code(vals[i] + 1);
                if (len + l <= s) enc |= code << len;
                len += l;
            }
            if (len <= s) tab[std::size_t{cfg} * bw_ + slot] = static_cast<std::uint16_t>(enc);
            --vals[slot];
        }
    }
}

std::optional<std::uint32_t> IncrementTable::next(unsigned s, std::uint32_t config, unsigned slot) {
    if (s > kMaxConfigBits || s == 0) return std::nullopt;
    if (by_size_[s].empty()) build(s);
    const auto e = by_size_[s][std::size_t{config} * bw_ + slot];
    if (e == 0) return std::nullopt;
    return e;
}

std::size_t IncrementTable::tables_built() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(by_size_.begin(), by_size_.end(), [](const auto& t) { return !t.empty(); }));
}

// ---- SuccinctCounterArray --------------------------------------------------

SuccinctCounterArray::SuccinctCounterArray(std::size_t n) : n_(n) {
    const unsigned lg = std::max(1u, ceil_log2(n));
    bw_ = std::max(4u, ceil_log2(lg));
    sat_ = std::max<std::uint64_t>(1, std::uint64_t{lg} * lg - 1);
    cell_width_ = bits_for(n + 1);  // a root-to-leaf path has at most n + 1 nodes
    nb_ = (n + bw_ - 1) / bw_;
    totals_ = PackedArray(nb_, bits_for(sat_));
    peak_bits_ = totals_.size_in_bits();
    table_ = std::make_unique<IncrementTable>(bw_);
}

std::size_t SuccinctCounterArray::gamma_area_bits(unsigned bw, std::uint64_t t) {
    const double v = bw * (3.0 + 2.0 * std::log2(static_cast<double>(t + bw) / bw));
    return static_cast<std::size_t>(std::ceil(v));
}

void SuccinctCounterArray::pass1(std::size_t pos) {
    if (allocated_) throw InvariantError("pass-1 increment after allocation");
    if (pos == 0 || pos > n_) throw RangeError("counter position out of range");
    const std::size_t k = (pos - 1) / bw_;
    const auto v = totals_.get(k);
    if (v < sat_) totals_.set(k, v + 1);
}

void SuccinctCounterArray::allocate() {
    if (allocated_) return;
    const std::size_t fixed = std::size_t{bw_} * cell_width_;
    auto area = [&](std::size_t k) -> std::uint64_t {
        const auto t = totals_.get(k);
        if (t >= sat_) return fixed;
        return std::min(fixed, gamma_area_bits(bw_, t));
    };
    for (std::size_t k = 0; k < nb_; ++k) saturated_ += totals_.get(k) >= sat_;
    dir_ = EliasFanoSeq(nb_, area);
    peak_bits_ = std::max(peak_bits_, totals_.size_in_bits() + dir_.size_in_bits());
    totals_ = PackedArray();

    areas_.assign((dir_.total() + 63) / 64 + 1, 0);
    for (std::size_t k = 0; k < nb_; ++k) {
        const auto off = dir_.prefix_sum(k);
        const auto s = dir_.prefix_sum(k + 1) - off;
        if (!fixed_layout(s)) set_bits(areas_, off, bw_, low_mask(bw_));  // bw codes of zero
    }
    peak_bits_ = std::max(peak_bits_, areas_.size() * 64 + dir_.size_in_bits());
    allocated_ = true;
}

void SuccinctCounterArray::gamma_decode(std::size_t off, std::uint64_t* out) const {
    std::size_t p = off;
    for (unsigned i = 0; i < bw_; ++i) {
        const std::uint64_t x = get_bits(areas_, p, 64);
        if (x == 0) throw InvariantError("corrupt counter configuration");
        const unsigned z = static_cast<unsigned>(std::countr_zero(x));
        p += z;
        out[i] = reverse_bits(get_bits(areas_, p, z + 1), z + 1) - 1;
        p += z + 1;
    }
}

std::size_t SuccinctCounterArray::gamma_encode(std::size_t off, std::size_t s, const std::uint64_t* vals) {
    std::size_t len = 0;
    for (unsigned i = 0; i < bw_; ++i) len += 2 * std::bit_width(vals[i] + 1) - 1;
    if (len > s) throw InvariantError("counter area overflow");
    for (std::size_t p = 0; p < s; p += 64) set_bits(areas_, off + p, static_cast<unsigned>(std::min<std::size_t>(64, s - p)), 0);
    std::size_t p = off;
    for (unsigned i = 0; i < bw_; ++i) {
        const auto u = vals[i] + 1;
        const unsigned l = static_cast<unsigned>(std::bit_width(u));
        p += l - 1;
        set_bits(areas_, p, l, reverse_bits(u, l));
        p += l;
    }
    return len;
}

void SuccinctCounterArray::increment(std::size_t pos) {
    if (!allocated_) throw InvariantError("pass-2 increment before allocation");
    if (pos == 0 || pos > n_) throw RangeError("counter position out of range");
    const std::size_t k = (pos - 1) / bw_;
    const unsigned slot = static_cast<unsigned>((pos - 1) % bw_);
    const auto off = dir_.prefix_sum(k);
    const auto s = dir_.prefix_sum(k + 1) - off;
    if (fixed_layout(s)) {
        const std::size_t cell = off + std::size_t{slot} * cell_width_;
        const auto v = get_bits(areas_, cell, cell_width_) + 1;
        if (v > low_mask(cell_width_)) throw InvariantError("counter cell overflow");
        set_bits(areas_, cell, cell_width_, v);
        return;
    }
    if (s <= IncrementTable::kMaxConfigBits) {
        const auto cfg = static_cast<std::uint32_t>(get_bits(areas_, off, static_cast<unsigned>(s)));
        if (auto nx = table_->next(static_cast<unsigned>(s), cfg, slot)) {
            set_bits(areas_, off, static_cast<unsigned>(s), *nx);
            ++table_incs_;
            return;
        }
    }
    std::uint64_t vals[64];
    gamma_decode(off, vals);
    ++vals[slot];
    gamma_encode(off, s, vals);
    ++fallback_incs_;
}

void SuccinctCounterArray::decode_bucket(std::size_t k, std::uint64_t* out) const {
    const auto off = dir_.prefix_sum(k);
    const auto s = dir_.prefix_sum(k + 1) - off;
    if (fixed_layout(s)) {
        for (unsigned i = 0; i < bw_; ++i) out[i] = get_bits(areas_, off + std::size_t{i} * cell_width_, cell_width_);
    } else {
        gamma_decode(off, out);
    }
}

std::uint64_t SuccinctCounterArray::get(std::size_t pos) const {
    if (!allocated_) throw InvariantError("counter read before allocation");
    if (pos == 0 || pos > n_) throw RangeError("counter position out of range");
    std::uint64_t vals[64];
    decode_bucket((pos - 1) / bw_, vals);
    return vals[(pos - 1) % bw_];
}

bool SuccinctCounterArray::saturated(std::size_t k) const {
    const auto off = dir_.prefix_sum(k);
    return fixed_layout(dir_.prefix_sum(k + 1) - off);
}

// ---- topology --------------------------------------------------------------

namespace {

// Runs `add(lo, hi)` for every internal-node interval and every leaf.
template <class Add>
std::size_t for_each_node_interval(const FmIndex& ix, Add&& add) {
    Enumerator e(ix);
    auto k = e.run([&](const NodeVisit& v) { add(v.interval.lo, v.interval.hi); });
    for (std::size_t i = 1; i <= ix.size(); ++i) add(i, i);
    return k;
}

template <class Emit>
void with_counters(const FmIndex& ix, const TopoOptions& opt, TopoStats* stats, Emit&& emit) {
    const std::size_t n = ix.size();
    TopoStats st;
    if (opt.plain_counters) {
        std::vector<std::uint32_t> co(n + 1, 0), cc(n + 1, 0);
        st.internal_nodes = for_each_node_interval(ix, [&](std::size_t lo, std::size_t hi) {
            ++co[lo];
            ++cc[hi];
        });
        st.workspace_bits_open = st.workspace_bits_close = 32 * n;
        if (stats) *stats = st;
        emit([&](std::size_t i) { return std::pair<std::uint64_t, std::uint64_t>{co[i], cc[i]}; });
        return;
    }
    SuccinctCounterArray co(n), cc(n);
    std::vector<std::uint32_t> sh_o, sh_c;
    if (opt.shadow_check) {
        sh_o.assign(n + 1, 0);
        sh_c.assign(n + 1, 0);
    }
    st.internal_nodes = for_each_node_interval(ix, [&](std::size_t lo, std::size_t hi) {
        co.pass1(lo);
        cc.pass1(hi);
    });
    co.allocate();
    cc.allocate();
    const auto again = for_each_node_interval(ix, [&](std::size_t lo, std::size_t hi) {
        co.increment(lo);
        cc.increment(hi);
        if (opt.shadow_check) {
            ++sh_o[lo];
            ++sh_c[hi];
        }
    });
    if (again != st.internal_nodes) throw InvariantError("enumeration differs between passes");
    if (opt.shadow_check) {
        for (std::size_t i = 1; i <= n; ++i)
            if (co.get(i) != sh_o[i] || cc.get(i) != sh_c[i]) throw InvariantError("succinct counters disagree with shadow");
    }
    st.bucket_width = co.bucket_width();
    st.saturation = co.saturation();
    st.buckets = co.buckets();
    st.saturated_open = co.saturated_buckets();
    st.saturated_close = cc.saturated_buckets();
    st.workspace_bits_open = co.workspace_bits();
    st.workspace_bits_close = cc.workspace_bits();
    st.table_increments = co.table_increments() + cc.table_increments();
    st.fallback_increments = co.fallback_increments() + cc.fallback_increments();
    if (stats) *stats = st;

    // Sequential read, one bucket decode per bw positions.
    const unsigned bw = co.bucket_width();
    std::uint64_t vo[64], vc[64];
    std::size_t cached = SIZE_MAX;
    emit([&](std::size_t i) {
        const std::size_t k = (i - 1) / bw;
        if (k != cached) {
            co.decode_bucket(k, vo);
            cc.decode_bucket(k, vc);
            cached = k;
        }
        return std::pair<std::uint64_t, std::uint64_t>{vo[(i - 1) % bw], vc[(i - 1) % bw]};
    });
}

template <class Get>
BitVector emit_from(std::size_t n, Get&& get) {
    BitBuilder b(4 * n);
    std::int64_t excess = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        auto [o, c] = get(i);
        b.append_run(true, o);
        excess += static_cast<std::int64_t>(o);
        if (static_cast<std::int64_t>(c) > excess || (excess == static_cast<std::int64_t>(c) && i != n && c > 0))
            throw InvariantError("parenthesis counters unbalanced at position " + std::to_string(i));
        b.append_run(false, c);
        excess -= static_cast<std::int64_t>(c);
    }
    if (excess != 0) throw InvariantError("parenthesis counters unbalanced at the end");
    return BitVector(std::move(b));
}

}  // namespace

CounterPair compute_counters(const FmIndex& ix, const TopoOptions& opt, TopoStats* stats) {
    CounterPair out;
    with_counters(ix, opt, stats, [&](auto&& get) {
        out.open.resize(ix.size());
        out.close.resize(ix.size());
        for (std::size_t i = 1; i <= ix.size(); ++i) {
            auto [o, c] = get(i);
            out.open[i - 1] = o;
            out.close[i - 1] = c;
        }
    });
    return out;
}

BitVector emit_bp(std::span<const std::uint64_t> open, std::span<const std::uint64_t> close) {
    if (open.size() != close.size()) throw InvariantError("counter arrays differ in length");
    return emit_from(open.size(), [&](std::size_t i) { return std::pair{open[i - 1], close[i - 1]}; });
}

BpTree build_topology(const FmIndex& ix, const TopoOptions& opt, TopoStats* stats) {
    BitVector bits;
    with_counters(ix, opt, stats, [&](auto&& get) { bits = emit_from(ix.size(), get); });
    try {
        return BpTree(std::move(bits));
    } catch (const FormatError& e) {
        throw InvariantError(std::string("emitted topology is not a tree: ") + e.what());
    }
}

}  // namespace scix
