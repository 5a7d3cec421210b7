#include "scix/apps.hpp"

#include <algorithm>

#include "scix/enumerate.hpp"
#include "scix/error.hpp"
#include "scix/sufsort.hpp"

namespace scix {

RepeatReport maximal_repeats(const FmIndex& ix, std::size_t min_len) {
    RepeatReport rep;
    std::vector<WaveletTree::DistinctEntry> d;
    enumerate_internal(ix, [&](const NodeVisit& v) {
        if (v.depth < std::max<std::size_t>(min_len, 1)) return;
        d.clear();
        ix.bwt().range_distinct(v.interval.lo, v.interval.hi, d);
        if (d.size() >= 2) rep.rows.push_back({v.interval, v.depth, v.interval.width()});
    });
    std::sort(rep.rows.begin(), rep.rows.end(), [](const RepeatRow& a, const RepeatRow& b) {
        return std::tie(a.length, a.occ, a.interval.lo, a.interval.hi) <
               std::tie(b.length, b.occ, b.interval.lo, b.interval.hi);
    });
    return rep;
}

std::vector<Symbol> repeat_factor(const FmIndex& ix, const RepeatRow& row) {
    return ix.extract(ix.sa_at(row.interval.lo), row.length);
}

std::vector<std::size_t> kmer_spectrum(const FmIndex& ix, std::size_t kmax) {
    const std::size_t n = ix.size();
    // merged[d] = sum of (children - 1) over internal nodes of depth d.
    std::vector<std::size_t> merged(kmax + 2, 0);
    if (n > 1) {
        enumerate_internal(ix, [&](const NodeVisit& v) {
            if (v.depth >= 1) merged[std::min(v.depth, kmax + 1)] += v.children.size() - 1;
        });
    }
    std::vector<std::size_t> out(kmax, 0);
    std::size_t deeper = merged[kmax + 1];
    for (std::size_t k = kmax; k >= 1; --k) {
        deeper += merged[k];
        out[k - 1] = k < n ? (n - k) - deeper : 0;
    }
    return out;
}

std::size_t distinct_kmers(const FmIndex& ix, std::size_t k) {
    if (k == 0) throw DomainError("k must be positive");
    if (k >= ix.size()) return 0;
    return kmer_spectrum(ix, k).back();
}

namespace {

struct Side {
    std::vector<std::uint64_t> bwt;
    std::vector<std::uint64_t> sa;  // 1-based text positions by rank
    std::vector<std::uint64_t> c;
};

// Letters move up by one so that T1 ends in 0 and T2 in 1.
Side joint_side(const Text& t, std::uint64_t sentinel, std::uint64_t k) {
    std::vector<std::uint64_t> x(t.syms.size());
    for (std::size_t i = 0; i + 1 < x.size(); ++i) x[i] = t.syms[i] + 1;
    x.back() = sentinel;
    // The sentinel is unique and smaller than every letter, so rotations sort
    // like suffixes; a trailing 0 makes it a plain SA-IS input.
    std::vector<std::uint64_t> s(x.begin(), x.end());
    for (auto& v : s) ++v;
    s.push_back(0);
    auto sa = sais<std::uint64_t>(s, k + 1);
    Side side;
    const std::size_t n = x.size();
    for (auto p : sa) {
        if (static_cast<std::size_t>(p) == n) continue;
        side.sa.push_back(static_cast<std::uint64_t>(p) + 1);
        side.bwt.push_back(x[(static_cast<std::size_t>(p) + n - 1) % n]);
    }
    side.c.assign(k + 1, 0);
    for (auto v : side.bwt) ++side.c[v + 1];
    for (std::size_t i = 1; i <= k; ++i) side.c[i] += side.c[i - 1];
    return side;
}

}  // namespace

MemReport maximal_exact_matches(const Text& t1, const Text& t2, const MemOptions& opt) {
    t1.validate();
    t2.validate();
    MemReport rep;
    if (t1.size() < 2 || t2.size() < 2) return rep;
    const std::uint64_t k = std::max(t1.sigma, t2.sigma) + 1;
    const Side s1 = joint_side(t1, 0, k), s2 = joint_side(t2, 1, k);
    const WaveletTree w1(s1.bwt, k), w2(s2.bwt, k);
    const std::size_t min_len = std::max<std::size_t>(opt.min_len, 1);

    JointEnumerator je(w1, s1.c, w2, s2.c);
    je.run([&](const JointVisit& v) {
        ++rep.hybrid_nodes;
        if (v.depth < min_len || rep.truncated) return;
        for (const auto& ca : v.children) {
            if (ca.a.empty()) continue;
            for (const auto& cb : v.children) {
                if (&ca == &cb || cb.b.empty()) continue;
                for (std::size_t r1 = ca.a.lo; r1 <= ca.a.hi; ++r1) {
                    for (std::size_t r2 = cb.b.lo; r2 <= cb.b.hi; ++r2) {
                        if (s1.bwt[r1 - 1] == s2.bwt[r2 - 1]) continue;
                        if (opt.max_pairs && rep.mems.size() == opt.max_pairs) {
                            rep.truncated = true;
                            return;
                        }
                        rep.mems.push_back({s1.sa[r1 - 1], s2.sa[r2 - 1], v.depth});
                    }
                }
            }
        }
    });
    std::sort(rep.mems.begin(), rep.mems.end());
    return rep;
}

void write_repeats_tsv(std::ostream& os, const FmIndex& ix, const RepeatReport& rep, bool with_strings,
                       bool header) {
    if (header) {
        os << "length\tocc\tlo\thi";
        if (with_strings) os << "\tfactor";
        os << '\n';
    }
    for (const auto& r : rep.rows) {
        os << r.length << '\t' << r.occ << '\t' << r.interval.lo << '\t' << r.interval.hi;
        if (with_strings) os << '\t' << ix.alphabet().decode(repeat_factor(ix, r));
        os << '\n';
    }
}

void write_kmers_tsv(std::ostream& os, std::size_t first_k, const std::vector<std::size_t>& counts,
                     bool header) {
    if (header) os << "k\tcount\n";
    for (std::size_t i = 0; i < counts.size(); ++i) os << first_k + i << '\t' << counts[i] << '\n';
}

void write_mems_tsv(std::ostream& os, const MemReport& rep, bool header) {
    if (header) os << "pos1\tpos2\tlen\n";
    for (const auto& m : rep.mems) os << m.pos1 << '\t' << m.pos2 << '\t' << m.len << '\n';
}

}  // namespace scix
