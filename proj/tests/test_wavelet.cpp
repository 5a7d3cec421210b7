#include <sstream>

#include "doctest.h"
#include "scix/error.hpp"
#include "scix/wavelet.hpp"
#include "util.hpp"

using namespace scix;

namespace {

// "annb$aa" with $=0, a=1, b=2, n=3
const std::vector<std::uint64_t> kBanana{1, 3, 3, 2, 0, 1, 1};

void check_all(const std::vector<std::uint64_t>& s, std::uint64_t sigma) {
    WaveletTree wt(s, sigma);
    REQUIRE(wt.size() == s.size());
    std::vector<std::size_t> cnt(sigma, 0);
    for (std::size_t i = 1; i <= s.size(); ++i) {
        REQUIRE(wt.access(i) == s[i - 1]);
        ++cnt[s[i - 1]];
        auto [c, r] = wt.access_rank(i);
        REQUIRE(c == s[i - 1]);
        REQUIRE(r == cnt[c]);
        for (std::uint64_t a = 0; a < sigma; ++a) REQUIRE(wt.rank(a, i) == cnt[a]);
        REQUIRE(wt.select(s[i - 1], cnt[s[i - 1]]) == i);
    }
    for (std::size_t i = 1; i <= s.size(); ++i) {
        for (std::size_t j = i; j <= s.size(); ++j) {
            std::vector<std::size_t> f(sigma, 0);
            for (std::size_t k = i; k <= j; ++k) ++f[s[k - 1]];
            auto d = wt.range_distinct(i, j);
            std::size_t idx = 0, total = 0;
            for (std::uint64_t a = 0; a < sigma; ++a) {
                if (!f[a]) continue;
                REQUIRE(idx < d.size());
                REQUIRE(d[idx].symbol == a);
                REQUIRE(d[idx].freq == f[a]);
                REQUIRE(d[idx].rank_before == wt.rank(a, i - 1));
                total += d[idx].freq;
                ++idx;
            }
            REQUIRE(idx == d.size());
            REQUIRE(total == j - i + 1);
            std::uint64_t c = testutil::uniform(0, sigma - 1);
            auto rc = wt.range_counts(i, j, c);
            std::size_t less = 0;
            for (std::uint64_t a = 0; a < c; ++a) less += f[a];
            REQUIRE(rc.less == less);
            REQUIRE(rc.equal == f[c]);
        }
    }
}

}  // namespace

TEST_CASE("wavelet banana examples") {
    WaveletTree wt(kBanana, 4);
    CHECK(wt.access(5) == 0);
    CHECK(wt.rank(1, 4) == 1);
    CHECK(wt.select(1, 2) == 6);
    CHECK(wt.rank(2, 0) == 0);
    using E = WaveletTree::DistinctEntry;
    CHECK(wt.range_distinct(1, 4) == std::vector<E>{{1, 0, 1}, {2, 0, 1}, {3, 0, 2}});
    CHECK(wt.range_distinct(5, 5) == std::vector<E>{{0, 0, 1}});
    CHECK(wt.range_distinct(5, 4).empty());
    CHECK_THROWS_AS(wt.select(2, 2), RangeError);
}

TEST_CASE("wavelet unary and errors") {
    std::vector<std::uint64_t> s(50, 0);
    WaveletTree wt(s, 1);
    CHECK(wt.levels() == 0);
    CHECK(wt.rank(0, 50) == 50);
    CHECK(wt.access(17) == 0);
    CHECK(wt.select(0, 9) == 9);
    auto d = wt.range_distinct(1, 50);
    REQUIRE(d.size() == 1);
    CHECK(d[0].freq == 50);

    std::vector<std::uint64_t> bad{0, 5};
    CHECK_THROWS_AS(WaveletTree(bad, 5), DomainError);

    std::vector<std::uint64_t> rep(20, 3);
    WaveletTree wr(rep, 4);
    CHECK(wr.rank(3, 20) == 20);
}

TEST_CASE("wavelet exhaustive small strings") {
    for (std::uint64_t sigma = 1; sigma <= 4; ++sigma) {
        for (std::size_t len = 1; len <= (sigma <= 2 ? 10u : 6u); ++len) {
            std::vector<std::uint64_t> s(len, 0);
            while (true) {
                check_all(s, sigma);
                std::size_t p = 0;
                while (p < len && s[p] == sigma - 1) s[p++] = 0;
                if (p == len) break;
                ++s[p];
            }
        }
    }
}

TEST_CASE("wavelet random against scan") {
    const std::uint64_t sigma = 64;
    std::vector<std::uint64_t> s(10000);
    for (auto& c : s) c = testutil::uniform(0, sigma - 1);
    WaveletTree wt(s, sigma);
    for (int q = 0; q < 300; ++q) {
        std::size_t i = testutil::uniform(1, s.size());
        std::uint64_t c = testutil::uniform(0, sigma - 1);
        CHECK(wt.access(i) == s[i - 1]);
        std::size_t r = 0;
        for (std::size_t k = 0; k < i; ++k) r += s[k] == c;
        CHECK(wt.rank(c, i) == r);
        if (r > 0) {
            std::size_t j = testutil::uniform(1, r);
            std::size_t pos = 0, seen = 0;
            while (seen < j) seen += s[pos++] == c;
            CHECK(wt.select(c, j) == pos);
        }
    }
    CHECK(wt.to_vector() == s);

    std::stringstream ss;
    io::Writer w(ss);
    wt.save(w);
    io::Reader r(ss);
    auto back = WaveletTree::load(r);
    CHECK(back.to_vector() == s);
}

TEST_CASE("wavelet non power of two sigma") {
    for (std::uint64_t sigma : {3, 5, 7, 9, 33, 100}) {
        std::vector<std::uint64_t> s(40);
        for (auto& c : s) c = testutil::uniform(0, sigma - 1);
        check_all(s, sigma);
    }
}
