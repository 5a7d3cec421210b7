#include "scix/bwt_doubling.hpp"

#include <algorithm>
#include <string>

#include "scix/error.hpp"
#include "scix/wavelet.hpp"

namespace scix {

std::uint64_t checked_pow(std::uint64_t sigma, std::size_t e) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < e; ++i)
        if (__builtin_mul_overflow(r, sigma, &r)) throw CapacityError("block alphabet exceeds 64 bits");
    return r;
}

DoublingPlan plan_doubling(std::size_t n, std::uint64_t sigma, std::optional<std::size_t> forced) {
    DoublingPlan p;
    p.n = n;
    std::size_t b = 1;
    if (forced) {
        b = *forced;
        if (b == 0 || (b & (b - 1)) != 0) throw DomainError("block size must be a power of two");
    } else if (sigma >= 2) {
        std::size_t q = 0;  // floor(log_sigma n)
        for (unsigned __int128 pw = sigma; pw <= n; pw *= sigma) ++q;
        const std::size_t e = q / 3;
        while (e >= 1 && b * 2 <= e) b *= 2;
        if (e < 1) b = 1;
    }
    p.block = b;
    p.fallback = b < 2 || n <= 1;
    p.padded = p.fallback ? n : (n + b - 1) / b * b;
    if (!p.fallback) {
        for (std::size_t l = b; l >= 2; l /= 2) {
            p.levels.push_back(l);
            p.block_sigma.push_back(checked_pow(sigma, l));
        }
    }
    return p;
}

std::vector<std::uint64_t> block_text(std::span<const std::uint64_t> padded, std::uint64_t sigma, std::size_t b,
                                      std::size_t shift) {
    const std::size_t n = padded.size();
    if (b == 0 || n % b != 0) throw DomainError("text length is not a multiple of the block size");
    checked_pow(sigma, b);
    std::vector<std::uint64_t> out(n / b);
    for (std::size_t j = 0; j < out.size(); ++j) {
        std::uint64_t v = 0;
        for (std::size_t t = 0; t < b; ++t) v = v * sigma + padded[(j * b + shift + t) % n];
        out[j] = v;
    }
    return out;
}

std::vector<std::uint64_t> unblock_text(std::span<const std::uint64_t> blocks, std::uint64_t sigma, std::size_t b) {
    std::vector<std::uint64_t> out(blocks.size() * b);
    for (std::size_t j = 0; j < blocks.size(); ++j) {
        std::uint64_t v = blocks[j];
        for (std::size_t t = b; t-- > 0;) {
            out[j * b + t] = v % sigma;
            v /= sigma;
        }
    }
    return out;
}

namespace {

// Rotation BWT via SA-IS over (x+1) repeated `copies` times, then 0. With one
// copy this is only valid when the last symbol of x is unique.
std::vector<std::uint64_t> rotation_bwt_sais(std::span<const std::uint64_t> x, std::uint64_t k, unsigned copies) {
    const std::size_t m = x.size();
    if (m == 0) return {};
    std::vector<std::uint64_t> s;
    s.reserve(copies * m + 1);
    for (unsigned c = 0; c < copies; ++c)
        for (auto v : x) s.push_back(v + 1);
    s.push_back(0);
    auto sa = sais<std::uint64_t>(s, k + 1);
    std::vector<std::uint64_t> out;
    out.reserve(m);
    for (auto p : sa)
        if (static_cast<std::size_t>(p) < m) out.push_back(x[(static_cast<std::size_t>(p) + m - 1) % m]);
    return out;
}

}  // namespace

std::vector<std::uint64_t> rotation_bwt(std::span<const std::uint64_t> x, std::uint64_t k) {
    return rotation_bwt_sais(x, k, 2);
}

std::vector<std::uint64_t> induce_rotated_bwt(std::span<const std::uint64_t> bwt_b, std::uint64_t sigma,
                                              std::size_t b) {
    if (b < 2 || b % 2) throw DomainError("block size must be even");
    const std::uint64_t k = checked_pow(sigma, b);
    const std::uint64_t h = checked_pow(sigma, b / 2);
    const std::size_t m = bwt_b.size();

    std::vector<std::uint64_t> c(k + 1, 0);
    for (auto v : bwt_b) {
        if (v >= k) throw DomainError("block symbol out of range");
        ++c[v + 1];
    }
    for (std::size_t i = 1; i <= k; ++i) c[i] += c[i - 1];

    // lf[r] = rank of the rotation one block earlier; both 0-based here.
    std::vector<std::uint64_t> lf(m), occ(k, 0);
    for (std::size_t r = 0; r < m; ++r) lf[r] = c[bwt_b[r]] + occ[bwt_b[r]]++;

    // Stable counting sort of the ranks by the right half of the preceding block.
    std::vector<std::uint64_t> start(h + 1, 0);
    for (auto v : bwt_b) ++start[v % h + 1];
    for (std::size_t i = 1; i <= h; ++i) start[i] += start[i - 1];
    std::vector<std::uint64_t> out(m);
    for (std::size_t r = 0; r < m; ++r) {
        const auto key = bwt_b[r] % h;
        out[start[key]++] = (bwt_b[lf[r]] % h) * h + bwt_b[r] / h;
    }
    return out;
}

MergeResult merge_bwts(std::span<const std::uint64_t> bwt1, std::span<const std::uint64_t> bwt2, std::uint64_t k) {
    MergeResult res;
    const std::size_t n1 = bwt1.size(), n2 = bwt2.size(), n = n1 + n2;
    if (n1 == 0 || n2 == 0) {
        res.merged.assign(n1 ? bwt1.begin() : bwt2.begin(), n1 ? bwt1.end() : bwt2.end());
        std::vector<std::uint64_t> words((n + 63) / 64, 0);
        if (n1)
            for (std::size_t i = 0; i < n; ++i) words[i >> 6] |= std::uint64_t{1} << (i & 63);
        res.interleave = BitVector(std::move(words), n);
        return res;
    }
    auto counts = [&](std::span<const std::uint64_t> b) {
        std::vector<std::uint64_t> c(k + 1, 0);
        for (auto v : b) {
            if (v >= k) throw DomainError("BWT symbol out of range");
            ++c[v + 1];
        }
        for (std::size_t i = 1; i <= k; ++i) c[i] += c[i - 1];
        return c;
    };
    const auto c1 = counts(bwt1), c2 = counts(bwt2);
    const WaveletTree w1(bwt1, k), w2(bwt2, k);

    res.merged.assign(n, 0);
    std::vector<std::uint64_t> fill((n + 63) / 64, 0), from1((n + 63) / 64, 0);
    std::size_t filled = 0;
    auto place = [&](std::size_t u0, std::span<const std::uint64_t> src, std::size_t lo, std::size_t hi, bool first) {
        for (std::size_t x = lo; x <= hi; ++x) {
            const std::size_t u = u0 + (x - lo);  // 1-based union rank
            const std::uint64_t bit = std::uint64_t{1} << ((u - 1) & 63);
            if (u == 0 || u > n || (fill[(u - 1) >> 6] & bit)) throw InvariantError("merge wrote a position twice");
            fill[(u - 1) >> 6] |= bit;
            if (first) from1[(u - 1) >> 6] |= bit;
            res.merged[u - 1] = src[x - 1];
            ++filled;
        }
    };
    JointEnumerator je(w1, c1, w2, c2);
    je.run([&](const JointVisit& v) {
        for (const auto& ch : v.children) {
            if (!ch.a.empty() && ch.b.empty()) place(ch.a.lo + ch.b.lo - 1, bwt1, ch.a.lo, ch.a.hi, true);
            else if (ch.a.empty() && !ch.b.empty()) place(ch.b.lo + ch.a.lo - 1, bwt2, ch.b.lo, ch.b.hi, false);
        }
    });
    if (filled != n) throw InvariantError("merge left " + std::to_string(n - filled) + " positions unfilled (equal rotations?)");
    res.interleave = BitVector(std::move(from1), n);
    res.stats = je.stats();
    return res;
}

std::vector<std::uint64_t> halve_blocks(std::span<const std::uint64_t> merged, std::uint64_t sigma, std::size_t b) {
    if (b < 2 || b % 2) throw DomainError("block size must be even");
    const std::uint64_t h = checked_pow(sigma, b / 2);
    std::vector<std::uint64_t> out(merged.size());
    for (std::size_t i = 0; i < merged.size(); ++i) out[i] = merged[i] % h;
    return out;
}

BwtString build_bwt_doubling(const Text& t, const DoublingOptions& opt, DoublingStats* stats) {
    t.validate();
    DoublingStats st;
    st.plan = plan_doubling(t.size(), t.sigma, opt.block_size);
    const auto& plan = st.plan;
    if (plan.fallback) {
        if (stats) *stats = st;
        return bwt_from_sa(t, sa_build(t));
    }
    const std::uint64_t sigma = t.sigma;
    std::vector<std::uint64_t> padded(t.syms.begin(), t.syms.end());
    padded.resize(plan.padded, kSentinel);

    // Base level: the last block holds every sentinel and no other block
    // does, so a single copy suffices for SA-IS.
    const std::size_t B = plan.block;
    auto tb = block_text(padded, sigma, B, 0);
    std::vector<std::uint64_t> bwt = rotation_bwt_sais(tb, plan.block_sigma.front(), 1);
    tb = {};

    for (std::size_t li = 0; li < plan.levels.size(); ++li) {
        const std::size_t b = plan.levels[li];
        const std::uint64_t k = plan.block_sigma[li];
        std::vector<std::uint64_t> rot;
        if (opt.rebuild_rotated) {
            rot = rotation_bwt(block_text(padded, sigma, b, b / 2), k);
        } else {
            rot = induce_rotated_bwt(bwt, sigma, b);
        }
        if (opt.cross_check) {
            ++st.cross_checks;
            if (rot != rotation_bwt(block_text(padded, sigma, b, b / 2), k))
                throw InvariantError("rotated BWT differs from direct construction at block size " + std::to_string(b));
        }
        auto m = merge_bwts(bwt, rot, k);
        st.merges.push_back(m.stats);
        rot = {};
        bwt = halve_blocks(m.merged, sigma, b);
        if (opt.cross_check) {
            ++st.cross_checks;
            if (bwt != rotation_bwt(block_text(padded, sigma, b / 2, 0), checked_pow(sigma, b / 2)))
                throw InvariantError("merged BWT differs from direct construction at block size " + std::to_string(b / 2));
        }
    }

    // Rank 1 is the rotation starting at the first sentinel; ranks 2..k+1 start
    // inside the padding and are all preceded by a sentinel.
    const std::size_t extra = plan.padded - plan.n;
    for (std::size_t r = 1; r <= extra; ++r)
        if (bwt[r] != kSentinel) throw InvariantError("padded sentinels are not clustered");
    BwtString out;
    out.reserve(plan.n);
    out.push_back(static_cast<Symbol>(bwt[0]));
    for (std::size_t r = extra + 1; r < bwt.size(); ++r) out.push_back(static_cast<Symbol>(bwt[r]));
    if (stats) *stats = std::move(st);
    return out;
}

}  // namespace scix
