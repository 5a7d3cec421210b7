#include "scix/sufsort.hpp"

#include <algorithm>
#include <numeric>

#include "scix/error.hpp"

namespace scix {
namespace {

using Idx = std::int64_t;

template <class Sym>
void fill_buckets(std::span<const Sym> s, std::vector<Idx>& bkt, bool end) {
    std::fill(bkt.begin(), bkt.end(), 0);
    for (auto c : s) ++bkt[static_cast<std::size_t>(c)];
    Idx sum = 0;
    for (auto& b : bkt) {
        sum += b;
        b = end ? sum : sum - b;
    }
}

template <class Sym>
void induce(std::span<const Sym> s, const std::vector<bool>& stype, std::span<Idx> sa, std::vector<Idx>& bkt) {
    const Idx n = static_cast<Idx>(s.size());
    fill_buckets(s, bkt, false);
    for (Idx i = 0; i < n; ++i) {
        const Idx j = sa[i] - 1;
        if (sa[i] > 0 && !stype[j]) sa[bkt[s[j]]++] = j;
    }
    fill_buckets(s, bkt, true);
    for (Idx i = n - 1; i >= 0; --i) {
        const Idx j = sa[i] - 1;
        if (sa[i] > 0 && stype[j]) sa[--bkt[s[j]]] = j;
    }
}

template <class Sym>
void sais_rec(std::span<const Sym> s, std::span<Idx> sa, std::size_t k) {
    const Idx n = static_cast<Idx>(s.size());
    if (n == 1) {
        sa[0] = 0;
        return;
    }
    std::vector<bool> stype(n);
    stype[n - 1] = true;
    for (Idx i = n - 2; i >= 0; --i) stype[i] = s[i] < s[i + 1] || (s[i] == s[i + 1] && stype[i + 1]);
    auto is_lms = [&](Idx i) { return i > 0 && stype[i] && !stype[i - 1]; };

    std::vector<Idx> bkt(k);
    fill_buckets(s, bkt, true);
    std::fill(sa.begin(), sa.end(), -1);
    for (Idx i = 1; i < n; ++i)
        if (is_lms(i)) sa[--bkt[s[i]]] = i;
    induce(s, stype, sa, bkt);

    Idx n1 = 0;
    for (Idx i = 0; i < n; ++i)
        if (is_lms(sa[i])) sa[n1++] = sa[i];

    // Name the sorted LMS substrings.
    std::fill(sa.begin() + n1, sa.end(), -1);
    Idx name = 0, prev = -1;
    for (Idx i = 0; i < n1; ++i) {
        const Idx pos = sa[i];
        bool diff = false;
        for (Idx d = 0; d < n; ++d) {
            if (prev == -1 || s[pos + d] != s[prev + d] || stype[pos + d] != stype[prev + d]) {
                diff = true;
                break;
            }
            if (d > 0 && (is_lms(pos + d) || is_lms(prev + d))) break;
        }
        if (diff) {
            ++name;
            prev = pos;
        }
        sa[n1 + pos / 2] = name - 1;
    }
    std::vector<Idx> s1;
    s1.reserve(n1);
    for (Idx i = n1; i < n; ++i)
        if (sa[i] >= 0) s1.push_back(sa[i]);

    auto sa1 = sa.subspan(0, n1);
    if (name < n1) {
        sais_rec<Idx>(std::span<const Idx>(s1), sa1, static_cast<std::size_t>(name));
    } else {
        for (Idx i = 0; i < n1; ++i) sa1[s1[i]] = i;
    }

    // Map reduced ranks back to LMS positions and induce the final order.
    for (Idx i = 1, j = 0; i < n; ++i)
        if (is_lms(i)) s1[j++] = i;
    for (Idx i = 0; i < n1; ++i) sa1[i] = s1[sa1[i]];
    std::fill(sa.begin() + n1, sa.end(), -1);
    fill_buckets(s, bkt, true);
    for (Idx i = n1 - 1; i >= 0; --i) {
        const Idx j = sa[i];
        sa[i] = -1;
        sa[--bkt[s[j]]] = j;
    }
    induce(s, stype, sa, bkt);
}

}  // namespace

template <class Sym>
std::vector<std::int64_t> sais(std::span<const Sym> s, std::size_t k) {
    std::vector<Idx> sa(s.size());
    if (s.empty()) return sa;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        if (static_cast<std::size_t>(s[i]) >= k) throw DomainError("symbol out of alphabet range");
        if (!(s.back() < s[i])) throw DomainError("last symbol must be unique and smallest");
    }
    if (static_cast<std::size_t>(s.back()) >= k) throw DomainError("symbol out of alphabet range");
    sais_rec<Sym>(s, sa, k);
    return sa;
}

template std::vector<std::int64_t> sais<std::uint32_t>(std::span<const std::uint32_t>, std::size_t);
template std::vector<std::int64_t> sais<std::uint64_t>(std::span<const std::uint64_t>, std::size_t);

SuffixArray sa_build(const Text& t) {
    t.validate();
    auto sa0 = sais<Symbol>(t.syms, t.sigma);
    SuffixArray sa(sa0.size());
    for (std::size_t i = 0; i < sa0.size(); ++i) sa[i] = static_cast<std::uint64_t>(sa0[i]) + 1;
    return sa;
}

BwtString bwt_from_sa(const Text& t, const SuffixArray& sa) {
    BwtString b(sa.size());
    for (std::size_t i = 0; i < sa.size(); ++i) b[i] = sa[i] > 1 ? t[sa[i] - 1] : kSentinel;
    return b;
}

std::vector<std::uint64_t> bwt_rotations(std::span<const std::uint64_t> s) {
    const std::size_t n = s.size();
    std::vector<std::size_t> rot(n);
    std::iota(rot.begin(), rot.end(), 0);
    std::stable_sort(rot.begin(), rot.end(), [&](std::size_t a, std::size_t b) {
        for (std::size_t d = 0; d < n; ++d) {
            auto x = s[(a + d) % n], y = s[(b + d) % n];
            if (x != y) return x < y;
        }
        return false;
    });
    std::vector<std::uint64_t> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = s[(rot[i] + n - 1) % n];
    return out;
}

BwtString bwt_naive(const Text& t) {
    std::vector<std::uint64_t> s(t.syms.begin(), t.syms.end());
    auto b = bwt_rotations(s);
    return BwtString(b.begin(), b.end());
}

}  // namespace scix
