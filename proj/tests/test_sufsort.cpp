#include "doctest.h"
#include "scix/error.hpp"
#include "scix/sufsort.hpp"
#include "scix_oracle.hpp"
#include "util.hpp"

using namespace scix;

namespace {

std::string bwt_str(const BwtString& b, const Alphabet& a) { return a.decode(b); }

}  // namespace

TEST_CASE("text and alphabet") {
    Alphabet a;
    auto t = text_from_bytes("banana", &a);
    CHECK(t.size() == 7);
    CHECK(t.sigma == 4);
    CHECK(t[1] == 2);
    CHECK(t[7] == kSentinel);
    CHECK(a.decode(t.syms) == "banana$");
    CHECK_NOTHROW(t.validate());
    CHECK(a.map_pattern("nab").value() == std::vector<Symbol>{3, 1, 2});
    CHECK_FALSE(a.map_pattern("zzz").has_value());
    CHECK(a.decode(t.reversed().syms) == "ananab$");

    Text bad;
    bad.sigma = 3;
    bad.syms = {1, 0, 2, 0};
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad.syms = {1, 2};
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad.syms = {};
    CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("suffix array examples") {
    Alphabet a;
    auto t = text_from_bytes("banana", &a);
    auto sa = sa_build(t);
    CHECK(sa == SuffixArray{7, 6, 4, 2, 1, 5, 3});
    CHECK(bwt_str(bwt_from_sa(t, sa), a) == "annb$aa");
    CHECK(bwt_str(bwt_naive(t), a) == "annb$aa");

    auto d = text_from_bytes("");
    CHECK(sa_build(d) == SuffixArray{1});
    CHECK(bwt_naive(d) == BwtString{0});
    CHECK(bwt_from_sa(d, sa_build(d)) == BwtString{0});

    Alphabet a2;
    auto ab = text_from_bytes("ab", &a2);
    CHECK(bwt_str(bwt_naive(ab), a2) == "b$a");

    auto aaaa = text_from_bytes("aaaa");
    CHECK(bwt_from_sa(aaaa, sa_build(aaaa)) == bwt_naive(aaaa));
    CHECK(bwt_naive(aaaa) == BwtString{1, 1, 1, 1, 0});
}

TEST_CASE("suffix array exhaustive small strings") {
    for (std::uint64_t letters = 1; letters <= 3; ++letters) {
        std::size_t maxlen = letters == 1 ? 12 : letters == 2 ? 12 : 9;
        for (std::size_t len = 0; len <= maxlen; ++len) {
            testutil::for_each_string(len, letters, [&](const Text& t) {
                auto sa = sa_build(t);
                REQUIRE(sa == oracle::naive_sa(t));
                REQUIRE(bwt_from_sa(t, sa) == bwt_naive(t));
            });
        }
    }
    // four letters, shorter
    for (std::size_t len = 0; len <= 7; ++len)
        testutil::for_each_string(len, 4, [&](const Text& t) { REQUIRE(sa_build(t) == oracle::naive_sa(t)); });
}

TEST_CASE("suffix array random strings") {
    for (int rep = 0; rep < 1000; ++rep) {
        std::size_t n = testutil::uniform(1, 256);
        std::uint64_t letters = testutil::uniform(1, 40);
        auto t = testutil::random_text(n, letters);
        auto sa = sa_build(t);
        REQUIRE(sa == oracle::naive_sa(t));
        REQUIRE(bwt_from_sa(t, sa) == bwt_naive(t));
    }
    // Larger inputs: check sortedness directly.
    for (std::uint64_t letters : {1, 2, 4, 200}) {
        auto t = testutil::random_text(50000, letters);
        auto sa = sa_build(t);
        std::vector<bool> seen(sa.size() + 1);
        for (auto p : sa) {
            REQUIRE(!seen[p]);
            seen[p] = true;
        }
        for (std::size_t i = 1; i < sa.size(); ++i) {
            REQUIRE(std::lexicographical_compare(t.syms.begin() + (sa[i - 1] - 1), t.syms.end(),
                                                 t.syms.begin() + (sa[i] - 1), t.syms.end()));
        }
    }
}

TEST_CASE("sais over generic symbols with a shifted sentinel") {
    std::vector<std::uint64_t> s{5, 3, 5, 3, 5, 2};
    auto sa = sais<std::uint64_t>(s, 6);
    CHECK(sa == std::vector<std::int64_t>{5, 3, 1, 4, 2, 0});
    std::vector<std::uint64_t> bad{1, 2, 1};
    CHECK_THROWS_AS(sais<std::uint64_t>(bad, 3), DomainError);
}

TEST_CASE("oracle suffix tree banana") {
    auto t = text_from_bytes("banana");
    auto st = oracle::naive_suffix_tree(t);
    CHECK(st.parens() == "(()(()(()()))()(()()))");
    REQUIRE(st.internal.size() == 4);
    CHECK(st.root().children == std::vector<oracle::TreeChild>{{0, 1, 1}, {1, 2, 4}, {2, 5, 5}, {3, 6, 7}});
    CHECK(oracle::naive_plcp(t) == std::vector<std::uint64_t>{0, 3, 2, 1, 0, 0, 0});
    CHECK(oracle::naive_suffix_tree(text_from_bytes("")).parens() == "(())");
}
