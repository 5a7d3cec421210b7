#include "scix/bptree.hpp"

#include <algorithm>
#include <array>
#include <limits>

namespace scix {

namespace {

constexpr io::Magic kBpMagic = io::make_magic("SBP1");
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct ByteTables {
    std::array<std::int8_t, 256> delta{};
    std::array<std::int8_t, 256> fmin{};  // min prefix excess over bits 0..k, k = 0..7
    std::array<std::int8_t, 256> fmax{};
    std::array<std::int8_t, 256> bmin{};  // min of E(q+k) - E(q+8), k = 0..7

    constexpr ByteTables() {
        for (int b = 0; b < 256; ++b) {
            int cur = 0, mn = 8, mx = -8;
            for (int k = 0; k < 8; ++k) {
                cur += ((b >> k) & 1) ? 1 : -1;
                mn = std::min(mn, cur);
                mx = std::max(mx, cur);
            }
            delta[b] = static_cast<std::int8_t>(cur);
            fmin[b] = static_cast<std::int8_t>(mn);
            fmax[b] = static_cast<std::int8_t>(mx);
            int suffix = 0, bm = 0;
            for (int k = 7; k >= 1; --k) {
                suffix += ((b >> k) & 1) ? 1 : -1;
                bm = std::min(bm, -suffix);
            }
            bmin[b] = static_cast<std::int8_t>(bm);
        }
    }
};

constexpr ByteTables kTables{};

}  // namespace

BpTree::BpTree(BitVector parens) : bits_(std::move(parens)) { build_directory(); }

BpTree BpTree::from_string(std::string_view parens) {
    BitBuilder b(parens.size());
    for (char ch : parens) {
        if (ch == '(') b.push_back(true);
        else if (ch == ')') b.push_back(false);
        else throw FormatError(std::string("unexpected character '") + ch + "' in parenthesis string");
    }
    return BpTree(BitVector(std::move(b)));
}

std::string BpTree::to_string() const {
    std::string s(size(), ')');
    for (std::size_t p = 1; p <= size(); ++p) {
        if (open_at(p)) s[p - 1] = '(';
    }
    return s;
}

void BpTree::build_directory() {
    const std::size_t n = bits_.size();
    nblocks_ = (n + kBlockBits - 1) / kBlockBits;
    leaf_base_ = std::bit_ceil(std::max<std::size_t>(nblocks_, 1));
    tree_.assign(2 * leaf_base_, MinMax{std::numeric_limits<std::int32_t>::max(),
                                        std::numeric_limits<std::int32_t>::min()});
    leaf_cum_.assign(nblocks_ + 1, 0);
    if (n >= (std::size_t{1} << 31)) throw CapacityError("parenthesis sequence too long");
    if (n & 1U) throw FormatError("unbalanced parentheses: odd length");

    std::int64_t cur = 0;
    for (std::size_t k = 0; k < nblocks_; ++k) {
        const std::size_t from = k * kBlockBits + 1;
        const std::size_t to = std::min(n, (k + 1) * kBlockBits);
        std::int64_t mn = std::numeric_limits<std::int64_t>::max();
        std::int64_t mx = std::numeric_limits<std::int64_t>::min();
        scan_minmax(from, to, cur, mn, mx);
        tree_[leaf_base_ + k] = {static_cast<std::int32_t>(mn), static_cast<std::int32_t>(mx)};
        cur = excess(to);
    }
    for (std::size_t v = leaf_base_; v-- > 1;) {
        tree_[v] = {std::min(tree_[2 * v].min, tree_[2 * v + 1].min), std::max(tree_[2 * v].max, tree_[2 * v + 1].max)};
    }
    if (n != 0) {
        if (cur != 0) throw FormatError("unbalanced parentheses: final excess " + std::to_string(cur));
        if (tree_[1].min < 0) throw FormatError("unbalanced parentheses: negative excess");
        if (n > 2 && range_minmax(1, n - 1).min < 1) throw FormatError("parentheses encode a forest, not a tree");
    }

    const auto& w = bits_.words();
    std::uint64_t total = 0;
    for (std::size_t k = 0; k < nblocks_; ++k) {
        leaf_cum_[k] = total;
        const std::size_t w_begin = k * kBlockBits / 64;
        const std::size_t w_end = std::min(w.size(), (k + 1) * kBlockBits / 64);
        for (std::size_t i = w_begin; i < w_end; ++i) {
            const std::uint64_t nxt = i + 1 < w.size() ? w[i + 1] : 0;
            total += static_cast<std::uint64_t>(std::popcount(w[i] & ~((w[i] >> 1) | (nxt << 63))));
        }
    }
    leaf_cum_[nblocks_] = total;
}

void BpTree::check_node(Node x) const {
    if (x == 0 || x > size() || !open_at(x)) throw RangeError("invalid node id " + std::to_string(x));
}

std::size_t BpTree::scan_fwd(std::size_t from, std::size_t to, std::int64_t cur, std::int64_t target) const {
    const auto& w = bits_.words();
    std::size_t p = from;
    while (p <= to && ((p - 1) & 7U)) {
        cur += open_at(p) ? 1 : -1;
        if (cur <= target) return p;
        ++p;
    }
    while (p + 7 <= to) {
        const std::size_t bi = (p - 1) >> 3;
        const auto byte = static_cast<std::uint8_t>(w[bi >> 3] >> ((bi & 7U) * 8));
        if (cur + kTables.fmin[byte] <= target) break;
        cur += kTables.delta[byte];
        p += 8;
    }
    while (p <= to) {
        cur += open_at(p) ? 1 : -1;
        if (cur <= target) return p;
        ++p;
    }
    return 0;
}

std::size_t BpTree::scan_bwd(std::size_t from, std::size_t to, std::int64_t cur, std::int64_t target) const {
    const auto& w = bits_.words();
    std::size_t p = from;
    while (p >= to && (p & 7U)) {
        if (cur <= target) return p;
        cur -= open_at(p) ? 1 : -1;
        --p;
    }
    while (p >= 8 && p >= to + 7) {
        const std::size_t bi = (p - 8) >> 3;
        const auto byte = static_cast<std::uint8_t>(w[bi >> 3] >> ((bi & 7U) * 8));
        if (cur + kTables.bmin[byte] <= target) break;
        cur -= kTables.delta[byte];
        p -= 8;
    }
    while (p >= to && p >= 1) {
        if (cur <= target) return p;
        cur -= open_at(p) ? 1 : -1;
        --p;
    }
    return kNone;
}

void BpTree::scan_minmax(std::size_t from, std::size_t to, std::int64_t cur, std::int64_t& mn,
                         std::int64_t& mx) const {
    const auto& w = bits_.words();
    std::size_t p = from;
    while (p <= to && ((p - 1) & 7U)) {
        cur += open_at(p) ? 1 : -1;
        mn = std::min(mn, cur);
        mx = std::max(mx, cur);
        ++p;
    }
    while (p + 7 <= to) {
        const std::size_t bi = (p - 1) >> 3;
        const auto byte = static_cast<std::uint8_t>(w[bi >> 3] >> ((bi & 7U) * 8));
        mn = std::min<std::int64_t>(mn, cur + kTables.fmin[byte]);
        mx = std::max<std::int64_t>(mx, cur + kTables.fmax[byte]);
        cur += kTables.delta[byte];
        p += 8;
    }
    while (p <= to) {
        cur += open_at(p) ? 1 : -1;
        mn = std::min(mn, cur);
        mx = std::max(mx, cur);
        ++p;
    }
}

std::size_t BpTree::fwd_search_le(std::size_t i, std::int64_t target) const {
    const std::size_t n = size();
    if (i >= n) return n + 1;
    const std::size_t from = i + 1;
    const std::size_t k = (from - 1) / kBlockBits;
    const std::size_t r = scan_fwd(from, std::min(n, (k + 1) * kBlockBits), excess(i), target);
    if (r != 0) return r;
    std::size_t v = leaf_base_ + k;
    for (;;) {
        if (v == 1) return n + 1;
        if ((v & 1U) == 0 && tree_[v + 1].min <= target) {
            ++v;
            break;
        }
        v >>= 1;
    }
    while (v < leaf_base_) {
        v *= 2;
        if (tree_[v].min > target) ++v;
    }
    const std::size_t k2 = v - leaf_base_;
    const std::size_t start = k2 * kBlockBits + 1;
    const std::size_t found = scan_fwd(start, std::min(n, (k2 + 1) * kBlockBits), excess(start - 1), target);
    if (found == 0) throw InvariantError("range-min-max tree inconsistent (forward search)");
    return found;
}

std::size_t BpTree::bwd_search_le(std::size_t i, std::int64_t target) const {
    if (i == 0) return kNone;
    if (i >= 2) {
        const std::size_t from = i - 1;
        const std::size_t k = (from - 1) / kBlockBits;
        const std::size_t r = scan_bwd(from, k * kBlockBits + 1, excess(from), target);
        if (r != kNone) return r;
        std::size_t v = leaf_base_ + k;
        bool found = false;
        while (v != 1) {
            if ((v & 1U) == 1 && tree_[v - 1].min <= target) {
                --v;
                found = true;
                break;
            }
            v >>= 1;
        }
        if (found) {
            while (v < leaf_base_) {
                v = 2 * v + 1;
                if (tree_[v].min > target) --v;
            }
            const std::size_t k2 = v - leaf_base_;
            const std::size_t end = std::min(size(), (k2 + 1) * kBlockBits);
            const std::size_t p = scan_bwd(end, k2 * kBlockBits + 1, excess(end), target);
            if (p == kNone) throw InvariantError("range-min-max tree inconsistent (backward search)");
            return p;
        }
    }
    return target >= 0 ? 0 : kNone;
}

BpTree::MinMax BpTree::range_minmax(std::size_t i, std::size_t j) const {
    std::int64_t mn = std::numeric_limits<std::int64_t>::max();
    std::int64_t mx = std::numeric_limits<std::int64_t>::min();
    const std::size_t ki = (i - 1) / kBlockBits;
    const std::size_t kj = (j - 1) / kBlockBits;
    if (ki == kj) {
        scan_minmax(i, j, excess(i - 1), mn, mx);
    } else {
        scan_minmax(i, (ki + 1) * kBlockBits, excess(i - 1), mn, mx);
        std::size_t l = leaf_base_ + ki + 1, r = leaf_base_ + kj;
        while (l < r) {
            if (l & 1U) {
                mn = std::min<std::int64_t>(mn, tree_[l].min);
                mx = std::max<std::int64_t>(mx, tree_[l].max);
                ++l;
            }
            if (r & 1U) {
                --r;
                mn = std::min<std::int64_t>(mn, tree_[r].min);
                mx = std::max<std::int64_t>(mx, tree_[r].max);
            }
            l >>= 1;
            r >>= 1;
        }
        const std::size_t start = kj * kBlockBits + 1;
        scan_minmax(start, j, excess(start - 1), mn, mx);
    }
    return {static_cast<std::int32_t>(mn), static_cast<std::int32_t>(mx)};
}

std::size_t BpTree::range_min_pos(std::size_t i, std::size_t j) const {
    if (i == 0 || i > j || j > size()) throw RangeError("range_min_pos bounds");
    return fwd_search_le(i - 1, range_minmax(i, j).min);
}

std::size_t BpTree::leaves_upto(std::size_t p) const {
    const std::size_t k = p / kBlockBits;
    std::size_t cnt = leaf_cum_[k];
    const auto& w = bits_.words();
    // Pattern starts at 0-based bit indices [k*kBlockBits, p).
    for (std::size_t i = k * kBlockBits / 64; i * 64 < p; ++i) {
        const std::uint64_t nxt = i + 1 < w.size() ? w[i + 1] : 0;
        std::uint64_t pat = w[i] & ~((w[i] >> 1) | (nxt << 63));
        const std::size_t valid = p - i * 64;
        if (valid < 64) pat &= (std::uint64_t{1} << valid) - 1;
        cnt += static_cast<std::size_t>(std::popcount(pat));
    }
    return cnt;
}

bool BpTree::is_leaf(Node x) const {
    check_node(x);
    return x < size() && !open_at(x + 1);
}

BpTree::Node BpTree::find_close(Node x) const {
    check_node(x);
    return fwd_search_le(x, excess(x) - 1);
}

BpTree::Node BpTree::find_open(std::size_t p) const {
    if (p == 0 || p > size() || open_at(p)) throw RangeError("find_open expects a closing parenthesis");
    return bwd_search_le(p, excess(p)) + 1;
}

BpTree::Node BpTree::parent(Node x) const {
    check_node(x);
    if (x == 1) return npos;
    return bwd_search_le(x, excess(x) - 2) + 1;
}

BpTree::Node BpTree::first_child(Node x) const {
    check_node(x);
    return (x < size() && open_at(x + 1)) ? x + 1 : npos;
}

BpTree::Node BpTree::next_sibling(Node x) const {
    const std::size_t c = find_close(x);
    return (c < size() && open_at(c + 1)) ? c + 1 : npos;
}

BpTree::Node BpTree::child(Node x, std::size_t k) const {
    if (k == 0) throw RangeError("child index is 1-based");
    Node c = first_child(x);
    while (c != npos && --k > 0) c = next_sibling(c);
    return c;
}

std::size_t BpTree::degree(Node x) const {
    std::size_t d = 0;
    for (Node c = first_child(x); c != npos; c = next_sibling(c)) ++d;
    return d;
}

BpTree::Node BpTree::lca(Node x, Node y) const {
    check_node(x);
    check_node(y);
    if (x > y) std::swap(x, y);
    if (x == y) return x;
    if (y <= find_close(x)) return x;
    return parent(range_min_pos(x, y) + 1);
}

std::size_t BpTree::depth(Node x) const {
    check_node(x);
    return static_cast<std::size_t>(excess(x) - 1);
}

BpTree::Node BpTree::level_ancestor(Node x, std::size_t d) const {
    const std::size_t dep = depth(x);
    if (d > dep) throw RangeError("level_ancestor depth exceeds node depth");
    if (d == dep) return x;
    return bwd_search_le(x, static_cast<std::int64_t>(d)) + 1;
}

std::size_t BpTree::height(Node x) const {
    const std::size_t c = find_close(x);
    return static_cast<std::size_t>(range_minmax(x, c).max - excess(x));
}

std::size_t BpTree::leftmost_leaf(Node x) const {
    check_node(x);
    return leaves_upto(x - 1) + 1;
}

std::size_t BpTree::rightmost_leaf(Node x) const { return leaves_upto(find_close(x)); }

BpTree::Node BpTree::leaf_select(std::size_t i) const {
    if (i == 0 || i > leaves()) throw RangeError("leaf_select index " + std::to_string(i) + " out of range");
    // Block k with leaf_cum_[k] < i <= leaf_cum_[k+1].
    auto it = std::lower_bound(leaf_cum_.begin(), leaf_cum_.end(), i);
    std::size_t k = static_cast<std::size_t>(it - leaf_cum_.begin()) - 1;
    std::size_t rem = i - leaf_cum_[k];
    const auto& w = bits_.words();
    for (std::size_t wi = k * kBlockBits / 64;; ++wi) {
        const std::uint64_t nxt = wi + 1 < w.size() ? w[wi + 1] : 0;
        const std::uint64_t pat = w[wi] & ~((w[wi] >> 1) | (nxt << 63));
        const auto c = static_cast<std::size_t>(std::popcount(pat));
        if (rem <= c) return wi * 64 + select_in_word(pat, static_cast<unsigned>(rem - 1)) + 1;
        rem -= c;
    }
}

std::size_t BpTree::leaf_rank(Node x) const {
    if (!is_leaf(x)) throw DomainError("leaf_rank on an internal node");
    return leaves_upto(x);
}

std::size_t BpTree::preorder(Node x) const {
    check_node(x);
    return bits_.rank1(x);
}

std::size_t BpTree::size_in_bits() const noexcept {
    return bits_.size_in_bits() + tree_.size() * 64 + leaf_cum_.size() * 64 + 3 * 64;
}

void BpTree::save(io::Writer& w) const {
    w.magic(kBpMagic);
    bits_.save(w);
    w.pod<std::uint64_t>(nblocks_);
    w.pod<std::uint64_t>(leaf_base_);
    w.vec(tree_);
    w.vec(leaf_cum_);
}

BpTree BpTree::load(io::Reader& r) {
    r.expect_magic(kBpMagic);
    BpTree t;
    t.bits_ = BitVector::load(r);
    t.nblocks_ = r.pod<std::uint64_t>();
    t.leaf_base_ = r.pod<std::uint64_t>();
    t.tree_ = r.vec<MinMax>();
    t.leaf_cum_ = r.vec<std::uint64_t>();
    const std::size_t nblocks = (t.bits_.size() + kBlockBits - 1) / kBlockBits;
    if (t.nblocks_ != nblocks || t.leaf_base_ != std::bit_ceil(std::max<std::size_t>(nblocks, 1)) ||
        t.tree_.size() != 2 * t.leaf_base_ || t.leaf_cum_.size() != nblocks + 1) {
        throw FormatError("inconsistent BP tree section");
    }
    return t;
}

}  // namespace scix
