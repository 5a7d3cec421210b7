#include "scix/enumerate.hpp"

#include "scix/error.hpp"

namespace scix {

Enumerator::Enumerator(const WaveletTree& bwt, std::span<const std::uint64_t> c) : bwt_(bwt), c_(c) {
    if (c.size() != bwt.sigma() + 1) throw DomainError("C array does not match the BWT alphabet");
}

std::size_t Enumerator::run(const Visitor& visit) {
    stats_ = {};
    const std::size_t sigma = c_.size() - 1;
    if (bwt_.size() == 0) return 0;

    struct Frame {
        std::size_t offset, len, depth;
    };
    std::vector<std::vector<ChildEntry>> v(sigma);  // V, one column per target symbol
    std::vector<std::uint32_t> y(sigma, 0);          // fill levels of V
    std::vector<Symbol> w;                            // symbols touched by the current node
    std::vector<ChildEntry> cur, stack_entries;
    std::vector<Frame> frames;
    std::vector<WaveletTree::DistinctEntry> dist;

    for (std::size_t c = 0; c < sigma; ++c)
        if (c_[c + 1] > c_[c]) cur.push_back({static_cast<Symbol>(c), {c_[c] + 1, c_[c + 1]}});
    std::size_t depth = 0;

    while (true) {
        visit(NodeVisit{{cur.front().sub.lo, cur.back().sub.hi}, cur, depth});
        ++stats_.visits;

        for (const auto& ch : cur) {
            dist.clear();
            bwt_.range_distinct(ch.sub.lo, ch.sub.hi, dist);
            stats_.weiner_links += dist.size();
            for (const auto& e : dist) {
                const auto c = e.symbol;
                if (y[c] == 0) w.push_back(static_cast<Symbol>(c));
                if (v[c].size() <= y[c]) v[c].resize(y[c] + 1);
                const std::size_t lo = c_[c] + e.rank_before + 1;
                v[c][y[c]++] = {ch.label, {lo, lo + e.freq - 1}};
            }
        }

        // Push the widest array first so that it is expanded last.
        std::size_t best = SIZE_MAX, best_u = 0;
        for (std::size_t k = 0; k < w.size(); ++k) {
            const auto c = w[k];
            if (y[c] < 2) continue;
            const std::size_t u = v[c][y[c] - 1].sub.hi - v[c][0].sub.lo + 1;
            if (best == SIZE_MAX || u > best_u) best = k, best_u = u;
        }
        if (best != SIZE_MAX) {
            auto push = [&](Symbol c) {
                frames.push_back({stack_entries.size(), y[c], depth + 1});
                stack_entries.insert(stack_entries.end(), v[c].begin(), v[c].begin() + y[c]);
                ++stats_.pushes;
            };
            push(w[best]);
            for (std::size_t k = 0; k < w.size(); ++k) {
                const auto c = w[k];
                if (k == best || y[c] < 2) continue;
                if (v[c][y[c] - 1].sub.hi - v[c][0].sub.lo + 1 > best_u) stats_.largest_first = false;
                push(c);
            }
            stats_.stack_watermark = std::max(stats_.stack_watermark, frames.size());
        }
        for (auto c : w) y[c] = 0;
        w.clear();

        if (frames.empty()) break;
        const Frame f = frames.back();
        frames.pop_back();
        cur.assign(stack_entries.begin() + f.offset, stack_entries.begin() + f.offset + f.len);
        stack_entries.resize(f.offset);
        depth = f.depth;
    }
    return stats_.visits;
}

std::size_t enumerate_internal(const FmIndex& ix, const Enumerator::Visitor& visit, EnumStats* stats) {
    Enumerator e(ix);
    auto k = e.run(visit);
    if (stats) *stats = e.stats();
    return k;
}

JointEnumerator::JointEnumerator(const WaveletTree& bwt1, std::span<const std::uint64_t> c1,
                                 const WaveletTree& bwt2, std::span<const std::uint64_t> c2)
    : w1_(bwt1), w2_(bwt2), c1_(c1), c2_(c2) {
    if (c1.size() != c2.size()) throw DomainError("joint traversal needs a common alphabet");
    if (c1.size() < bwt1.sigma() + 1 || c2.size() < bwt2.sigma() + 1) throw DomainError("C array too short");
}

namespace {

// Gives empty sides their position: the running end of the preceding siblings.
void place_empty_sides(std::span<JointChild> kids) {
    std::size_t pa = 0, pb = 0;
    for (const auto& k : kids) {
        if (!k.a.empty() && !pa) pa = k.a.lo;
        if (!k.b.empty() && !pb) pb = k.b.lo;
    }
    for (auto& k : kids) {
        if (k.a.empty()) k.a = {pa, pa - 1};
        else pa = k.a.hi + 1;
        if (k.b.empty()) k.b = {pb, pb - 1};
        else pb = k.b.hi + 1;
    }
}

}  // namespace

std::size_t JointEnumerator::run(const Visitor& visit) {
    stats_ = {};
    if (w1_.size() == 0 || w2_.size() == 0) return 0;
    const std::size_t sigma = c1_.size() - 1;

    struct Frame {
        std::size_t offset, len, depth;
    };
    std::vector<std::vector<JointChild>> v(sigma);
    std::vector<std::uint32_t> y(sigma, 0), t1(sigma, 0), t2(sigma, 0);
    std::vector<Symbol> w;
    std::vector<JointChild> cur, stack_entries;
    std::vector<Frame> frames;
    std::vector<WaveletTree::DistinctEntry> d1, d2;

    for (std::size_t c = 0; c < sigma; ++c) {
        Interval a{c1_[c] + 1, c1_[c + 1]}, b{c2_[c] + 1, c2_[c + 1]};
        if (!a.empty() || !b.empty()) cur.push_back({static_cast<Symbol>(c), a, b});
    }
    place_empty_sides(cur);
    std::size_t depth = 0;

    auto add = [&](std::uint64_t c, Symbol label, Interval a, Interval b) {
        if (y[c] == 0) w.push_back(static_cast<Symbol>(c));
        if (v[c].size() <= y[c]) v[c].resize(y[c] + 1);
        v[c][y[c]++] = {label, a, b};
        t1[c] += !a.empty();
        t2[c] += !b.empty();
    };

    while (true) {
        JointVisit jv{{0, 0}, {0, 0}, cur, depth};
        jv.a = {cur.front().a.lo, cur.back().a.hi};
        jv.b = {cur.front().b.lo, cur.back().b.hi};
        visit(jv);
        ++stats_.visits;

        for (const auto& ch : cur) {
            d1.clear();
            d2.clear();
            if (!ch.a.empty()) w1_.range_distinct(ch.a.lo, ch.a.hi, d1);
            if (!ch.b.empty()) w2_.range_distinct(ch.b.lo, ch.b.hi, d2);
            stats_.weiner_links += d1.size() + d2.size();
            std::size_t i = 0, j = 0;
            while (i < d1.size() || j < d2.size()) {
                const bool take1 = i < d1.size() && (j == d2.size() || d1[i].symbol <= d2[j].symbol);
                const bool take2 = j < d2.size() && (i == d1.size() || d2[j].symbol <= d1[i].symbol);
                const auto c = take1 ? d1[i].symbol : d2[j].symbol;
                Interval a{1, 0}, b{1, 0};
                if (take1) {
                    const std::size_t lo = c1_[c] + d1[i].rank_before + 1;
                    a = {lo, lo + d1[i].freq - 1};
                    ++i;
                }
                if (take2) {
                    const std::size_t lo = c2_[c] + d2[j].rank_before + 1;
                    b = {lo, lo + d2[j].freq - 1};
                    ++j;
                }
                add(c, ch.label, a, b);
            }
        }

        auto is_node = [&](Symbol c) { return y[c] >= 2 && t1[c] >= 1 && t2[c] >= 1; };
        auto width = [&](Symbol c) {
            // Both sides together; empty sides contribute nothing.
            std::size_t u = 0;
            for (std::uint32_t k = 0; k < y[c]; ++k) u += v[c][k].a.width() + v[c][k].b.width();
            return u;
        };
        std::size_t best = SIZE_MAX, best_u = 0;
        for (std::size_t k = 0; k < w.size(); ++k) {
            if (!is_node(w[k])) continue;
            const auto u = width(w[k]);
            if (best == SIZE_MAX || u > best_u) best = k, best_u = u;
        }
        if (best != SIZE_MAX) {
            auto push = [&](Symbol c) {
                if (t1[c] == 0 || t2[c] == 0) stats_.hybrid_only = false;
                frames.push_back({stack_entries.size(), y[c], depth + 1});
                stack_entries.insert(stack_entries.end(), v[c].begin(), v[c].begin() + y[c]);
                ++stats_.pushes;
            };
            push(w[best]);
            for (std::size_t k = 0; k < w.size(); ++k)
                if (k != best && is_node(w[k])) push(w[k]);
            stats_.stack_watermark = std::max(stats_.stack_watermark, frames.size());
        }
        for (auto c : w) y[c] = t1[c] = t2[c] = 0;
        w.clear();

        if (frames.empty()) break;
        const Frame f = frames.back();
        frames.pop_back();
        cur.assign(stack_entries.begin() + f.offset, stack_entries.begin() + f.offset + f.len);
        stack_entries.resize(f.offset);
        place_empty_sides(cur);
        depth = f.depth;
    }
    return stats_.visits;
}

}  // namespace scix
