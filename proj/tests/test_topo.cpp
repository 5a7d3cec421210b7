#include <algorithm>

#include "doctest.h"
#include "scix/error.hpp"
#include "scix/topo_builder.hpp"
#include "scix_oracle.hpp"
#include "util.hpp"

using namespace scix;

TEST_CASE("banana counters and parentheses") {
    auto ix = FmIndex::build(text_from_bytes("banana"));
    for (bool plain : {false, true}) {
        TopoStats st;
        auto cp = compute_counters(ix, {.plain_counters = plain, .shadow_check = !plain}, &st);
        CHECK(cp.open == std::vector<std::uint64_t>{2, 2, 2, 1, 1, 2, 1});
        CHECK(cp.close == std::vector<std::uint64_t>{1, 1, 1, 3, 1, 1, 3});
        CHECK(st.internal_nodes == 4);
        auto bp = build_topology(ix, {.plain_counters = plain});
        CHECK(bp.to_string() == "(()(()(()()))()(()()))");
        CHECK(bp.nodes() == 11);
        CHECK(bp.leaves() == 7);
    }
}

TEST_CASE("single-symbol text") {
    auto ix = FmIndex::build(text_from_bytes(""));
    auto cp = compute_counters(ix);
    CHECK(cp.open == std::vector<std::uint64_t>{2});
    CHECK(cp.close == std::vector<std::uint64_t>{2});
    CHECK(build_topology(ix).to_string() == "(())");
}

TEST_CASE("emit_bp rejects unbalanced counters") {
    std::vector<std::uint64_t> o{1, 0}, c{0, 2};
    CHECK_THROWS_AS(emit_bp(o, c), InvariantError);
    std::vector<std::uint64_t> o2{1, 1}, c2{1, 1};
    CHECK_THROWS_AS(emit_bp(o2, c2), InvariantError);  // two roots
    std::vector<std::uint64_t> o3{2, 1}, c3{1, 1};
    CHECK_THROWS_AS(emit_bp(o3, c3), InvariantError);
}

TEST_CASE("unary text: the closing counter at position n saturates") {
    const std::size_t k = 600;
    auto t = text_from_bytes(std::string(k, 'a'));
    auto ix = FmIndex::build(t);
    TopoStats st;
    auto cp = compute_counters(ix, {.shadow_check = true}, &st);
    CHECK(cp.close.back() == k + 1);
    CHECK(cp.open.front() == 2);
    CHECK(st.saturated_close >= 1);
    CHECK(st.saturated_open == 0);
    auto bp = build_topology(ix);
    CHECK(bp.height(1) == k);  // a path of internal nodes
    CHECK(bp.to_string() == oracle::naive_suffix_tree(t).parens());
}

TEST_CASE("gamma area formula") {
    CHECK(SuccinctCounterArray::gamma_area_bits(4, 0) == 12);
    CHECK(SuccinctCounterArray::gamma_area_bits(4, 4) == 20);
    CHECK(SuccinctCounterArray::gamma_area_bits(5, 10) == 31);
}

TEST_CASE("counter array against plain shadow, order independent") {
    for (std::size_t n : {7, 100, 4096, 70000}) {
        std::vector<std::size_t> incs;
        for (std::size_t i = 1; i <= n; ++i) {
            std::size_t r = testutil::uniform(0, 9);
            std::size_t times = r < 5 ? 1 : r < 8 ? 2 : r < 9 ? 0 : testutil::uniform(3, std::min<std::size_t>(600, n + 1));
            for (std::size_t k = 0; k < times; ++k) incs.push_back(i);
        }
        std::vector<std::uint64_t> first;
        for (int order = 0; order < 2; ++order) {
            std::shuffle(incs.begin(), incs.end(), testutil::rng());
            SuccinctCounterArray a(n);
            for (auto p : incs) a.pass1(p);
            a.allocate();
            std::shuffle(incs.begin(), incs.end(), testutil::rng());
            std::vector<std::uint64_t> shadow(n + 1, 0);
            for (auto p : incs) {
                a.increment(p);
                ++shadow[p];
            }
            std::vector<std::uint64_t> got(n);
            for (std::size_t i = 1; i <= n; ++i) {
                got[i - 1] = a.get(i);
                REQUIRE(got[i - 1] == shadow[i]);
            }
            if (order == 0) first = got;
            else CHECK(got == first);
            CHECK(a.table_increments() + a.fallback_increments() <= incs.size());
        }
    }
}

TEST_CASE("sparse buckets go through the increment table") {
    const std::size_t n = 5000;
    SuccinctCounterArray a(n);
    for (std::size_t i = 1; i <= n; i += 4) a.pass1(i);
    a.allocate();
    for (std::size_t i = 1; i <= n; i += 4) a.increment(i);
    CHECK(a.table_increments() > 0);
    for (std::size_t i = 1; i <= n; ++i) REQUIRE(a.get(i) == ((i - 1) % 4 == 0 ? 1u : 0u));
}

TEST_CASE("topology equals oracle parentheses: exhaustive") {
    for (std::uint64_t letters = 1; letters <= 4; ++letters) {
        std::size_t maxlen = letters <= 2 ? 11 : letters == 3 ? 8 : 6;
        for (std::size_t len = 0; len <= maxlen; ++len) {
            testutil::for_each_string(len, letters, [&](const Text& t) {
                auto ix = FmIndex::build(t);
                REQUIRE(build_topology(ix).to_string() == oracle::naive_suffix_tree(t).parens());
            });
        }
    }
}

TEST_CASE("topology equals oracle parentheses: random and leaf spans") {
    for (int rep = 0; rep < 500; ++rep) {
        auto t = testutil::random_text(testutil::uniform(1, 512), testutil::uniform(1, 12));
        auto ix = FmIndex::build(t);
        auto bp = build_topology(ix, {.shadow_check = true});
        auto st = oracle::naive_suffix_tree(t);
        REQUIRE(bp.to_string() == st.parens());
        REQUIRE(bp.leaves() == t.size());
        REQUIRE(build_topology(ix, {.plain_counters = true}) == bp);
        for (const auto& v : st.internal) {
            auto x = bp.lca(bp.leaf_select(v.lo), bp.leaf_select(v.hi));
            REQUIRE(bp.leftmost_leaf(x) == v.lo);
            REQUIRE(bp.rightmost_leaf(x) == v.hi);
        }
    }
    // alternating two-symbol text
    auto alt = text_from_bytes("abababababababababab");
    CHECK(build_topology(FmIndex::build(alt)).to_string() == oracle::naive_suffix_tree(alt).parens());
}

TEST_CASE("counter workspace on a mid-size random text") {
    auto t = testutil::random_text(1 << 16, 16);
    auto ix = FmIndex::build(t);
    TopoStats st;
    auto bp = build_topology(ix, {.shadow_check = true}, &st);
    const double n = static_cast<double>(t.size());
    CHECK(st.workspace_bits_open <= 8 * n);
    CHECK(st.workspace_bits_close <= 8 * n);
    CHECK(bp.size_in_bits() <= 5 * n);
    MESSAGE("workspace bits/n: open " << st.workspace_bits_open / n << " close " << st.workspace_bits_close / n
                                      << " table incs " << st.table_increments << " fallback " << st.fallback_increments);
}
