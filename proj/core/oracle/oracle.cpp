#include "scix_oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace scix::oracle {

std::vector<std::uint64_t> naive_sa(const Text& t) {
    const auto& s = t.syms;
    std::vector<std::uint64_t> sa(s.size());
    std::iota(sa.begin(), sa.end(), 1);
    std::sort(sa.begin(), sa.end(), [&](std::uint64_t a, std::uint64_t b) {
        return std::lexicographical_compare(s.begin() + (a - 1), s.end(), s.begin() + (b - 1), s.end());
    });
    return sa;
}

std::vector<std::uint64_t> naive_lcp(const Text& t, const std::vector<std::uint64_t>& sa) {
    const auto& s = t.syms;
    std::vector<std::uint64_t> lcp(sa.size() + 1, 0);
    for (std::size_t i = 2; i <= sa.size(); ++i) {
        std::size_t a = sa[i - 2] - 1, b = sa[i - 1] - 1, l = 0;
        while (a + l < s.size() && b + l < s.size() && s[a + l] == s[b + l]) ++l;
        lcp[i] = l;
    }
    return lcp;
}

std::vector<std::uint64_t> naive_plcp(const Text& t) {
    auto sa = naive_sa(t);
    auto lcp = naive_lcp(t, sa);
    std::vector<std::uint64_t> plcp(sa.size());
    for (std::size_t i = 1; i <= sa.size(); ++i) plcp[sa[i - 1] - 1] = lcp[i];
    return plcp;
}

SuffixTree naive_suffix_tree(const Text& t) {
    SuffixTree st;
    st.sa = naive_sa(t);
    st.lcp = naive_lcp(t, st.sa);
    const std::size_t n = st.sa.size();

    struct Pending {
        std::size_t lo, hi;
        long node;  // index into `built`, -1 for a leaf
    };
    struct Frame {
        std::size_t depth, lo;
        std::vector<Pending> kids;
    };
    struct Built {
        std::size_t lo, hi, depth;
        std::vector<Pending> kids;
    };
    std::vector<Built> built;
    std::vector<Frame> stack{{0, 1, {}}};
    auto close = [&](Frame&& f, std::size_t hi) {
        built.push_back({f.lo, hi, f.depth, std::move(f.kids)});
        return Pending{f.lo, hi, static_cast<long>(built.size() - 1)};
    };
    for (std::size_t i = 2; i <= n; ++i) {
        const std::size_t l = st.lcp[i];
        Pending pend{i - 1, i - 1, -1};
        while (l < stack.back().depth) {
            Frame f = std::move(stack.back());
            stack.pop_back();
            f.kids.push_back(pend);
            pend = close(std::move(f), i - 1);
        }
        if (l > stack.back().depth) {
            stack.push_back({l, pend.lo, {pend}});
        } else {
            stack.back().kids.push_back(pend);
        }
    }
    Pending pend{n, n, -1};
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        f.kids.push_back(pend);
        pend = close(std::move(f), n);
    }

    // Re-emit in preorder with labelled children.
    std::vector<long> todo{pend.node};
    while (!todo.empty()) {
        const auto& b = built[todo.back()];
        todo.pop_back();
        TreeNode node{b.lo, b.hi, b.depth, {}};
        for (const auto& k : b.kids) node.children.push_back({t.syms[st.sa[k.lo - 1] - 1 + b.depth], k.lo, k.hi});
        st.internal.push_back(std::move(node));
        for (auto it = b.kids.rbegin(); it != b.kids.rend(); ++it)
            if (it->node >= 0) todo.push_back(it->node);
    }
    return st;
}

std::string SuffixTree::parens() const {
    std::map<std::pair<std::size_t, std::size_t>, const TreeNode*> by_interval;
    for (const auto& v : internal) by_interval[{v.lo, v.hi}] = &v;
    std::string out;
    // Explicit stack of (node, next child index).
    std::vector<std::pair<const TreeNode*, std::size_t>> stack{{&internal.front(), 0}};
    out.push_back('(');
    while (!stack.empty()) {
        auto& [v, k] = stack.back();
        if (k == v->children.size()) {
            out.push_back(')');
            stack.pop_back();
            continue;
        }
        const auto& c = v->children[k++];
        if (c.lo == c.hi) {
            out += "()";
        } else {
            out.push_back('(');
            stack.push_back({by_interval.at({c.lo, c.hi}), 0});
        }
    }
    return out;
}

std::vector<RepeatRow> brute_maximal_repeats(const Text& t) {
    const auto& s = t.syms;  // includes the trailing sentinel
    const std::size_t m = s.size() - 1;
    struct Info {
        std::size_t occ = 0;
        std::set<Symbol> left, right;
    };
    std::map<std::vector<Symbol>, Info> subs;
    for (std::size_t p = 0; p < m; ++p) {
        for (std::size_t len = 1; p + len <= m; ++len) {
            auto& info = subs[std::vector<Symbol>(s.begin() + p, s.begin() + p + len)];
            ++info.occ;
            info.left.insert(p == 0 ? kSentinel : s[p - 1]);
            info.right.insert(s[p + len]);
        }
    }
    std::vector<RepeatRow> out;
    for (auto& [f, info] : subs)
        if (info.occ >= 2 && info.left.size() >= 2 && info.right.size() >= 2) out.push_back({f, info.occ});
    return out;
}

std::size_t brute_distinct_kmers(const Text& t, std::size_t k) {
    const std::size_t m = t.size() - 1;
    if (k == 0 || k > m) return 0;
    std::set<std::vector<Symbol>> seen;
    for (std::size_t p = 0; p + k <= m; ++p) seen.emplace(t.syms.begin() + p, t.syms.begin() + p + k);
    return seen.size();
}

std::vector<MemTriple> brute_mems(const Text& t1, const Text& t2, std::size_t min_len) {
    const auto& a = t1.syms;
    const auto& b = t2.syms;
    const std::size_t n1 = a.size() - 1, n2 = b.size() - 1;
    std::vector<MemTriple> out;
    for (std::size_t i = 0; i < n1; ++i) {
        for (std::size_t j = 0; j < n2; ++j) {
            if (a[i] != b[j]) continue;
            if (i > 0 && j > 0 && a[i - 1] == b[j - 1]) continue;
            std::size_t l = 0;
            while (i + l < n1 && j + l < n2 && a[i + l] == b[j + l]) ++l;
            if (l >= std::max<std::size_t>(min_len, 1)) out.emplace_back(i + 1, j + 1, l);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace scix::oracle
